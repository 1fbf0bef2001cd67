#include "planewave/zero_density.hpp"

#include <cmath>

#include "planewave/csv.hpp"
#include "planewave/errors.hpp"

namespace planewave {

namespace {

void require_finite(double v, const char* op) {
  if (!std::isfinite(v)) throw DomainError(std::string(op) + ": non-finite coordinate");
}

}  // namespace

KinematicState state_zero_density(const Species& species, const TransverseProfile& profile,
                                  double xi) {
  KinematicState st;
  st.u_perp = transverse_momentum(species, profile.a_perp(xi));
  st.u_z = 0.5 * st.u_perp.norm2();
  st.gamma = 1.0 + st.u_z;
  st.s = 1.0;
  return st;
}

TrajectorySample position_forward(const PhaseFunctions& pf, double x0, const Vec3& X) {
  require_finite(x0, "position_forward");
  require_finite(X.x + X.y + X.z, "position_forward");
  TrajectorySample out;
  out.x0 = x0;
  if (x0 <= X.z) {
    out.x_perp = X.xy();
    out.z = X.z;
    out.state = rest_state();
    return out;
  }
  const double xi = pf.xi_inverse(x0 - X.z);
  out.z = x0 - xi;
  out.x_perp = X.xy() + pf.y_perp(xi);
  out.state = pf.state(xi);
  return out;
}

Vec3 position_inverse(const PhaseFunctions& pf, double x0, const Vec3& x) {
  require_finite(x0, "position_inverse");
  require_finite(x.x + x.y + x.z, "position_inverse");
  const double xi = x0 - x.z;
  const Vec2 perp = x.xy() - pf.y_perp(xi);
  return {perp.x, perp.y, x.z - pf.y3(xi)};
}

double displacement(const PhaseFunctions& pf, double x0, double Z) {
  require_finite(x0 - Z, "displacement");
  if (x0 <= Z) return 0.0;
  return pf.y3(pf.xi_inverse(x0 - Z));
}

ZetaResult zeta_at_phase(const PhaseFunctions& pf, double xi_check) {
  require_finite(xi_check, "zeta_at_phase");
  if (!(xi_check > 0.0)) return {0.0, xi_check};
  return {pf.y3(xi_check), pf.xi_of(xi_check)};
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples) {
  CsvWriter csv(out, {"x0", "z", "x", "y", "uz", "ux", "uy", "gamma", "s"});
  for (const auto& s : samples) {
    csv.row({s.x0, s.z, s.x_perp.x, s.x_perp.y, s.state.u_z, s.state.u_perp.x, s.state.u_perp.y,
             s.state.gamma, s.state.s});
  }
}

}  // namespace planewave
