#include "planewave/plasma_correction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "planewave/constants.hpp"
#include "planewave/csv.hpp"
#include "planewave/errors.hpp"
#include "planewave/kernels.hpp"
#include "planewave/roots.hpp"

namespace planewave {

namespace {

constexpr int kNodes = 24;
constexpr int kMaxDepth = 14;
constexpr double kTableTol = 1e-12;

// expm1(2 r), capped so e^{2r} stays finite far outside the validity region.
double em1_of(double r) { return std::expm1(std::min(2.0 * r, 700.0)); }

double weight(double uz0, double r) {
  const double u[1] = {uz0};
  const double m[1] = {em1_of(r)};
  double g[1];
  kernels::correction_weight(u, m, g);
  return g[0];
}

// gamma^(0) beta_z^(1) at phase y, with 1 + u_perp^2 - e^{2r} written as 2 u_z - expm1(2r)
// to keep the early-pulse values free of cancellation.
double gamma_beta_z1(const PhaseFunctions& pf, double K4, double y) {
  const double uz = pf.u_z(y);
  const double m = em1_of(K4 * pf.v3(y));
  return (1.0 + uz) * (2.0 * uz - m) / (2.0 + 2.0 * uz + m);
}

void require_nonnegative_Z(double Z, const char* op) {
  if (!(Z >= 0.0)) throw DomainError(std::string(op) + ": requires Z >= 0");
}

}  // namespace

PlasmaSetup::PlasmaSetup(double n0) : n0_(n0) {
  if (!(n0 >= 0.0) || !std::isfinite(n0)) throw DomainError("plasma: n0 must be >= 0");
}

PlasmaSetup PlasmaSetup::tabulated(double n0, std::vector<double> Z, std::vector<double> relative) {
  PlasmaSetup p(n0);
  if (Z.size() < 2 || Z.size() != relative.size()) {
    throw DomainError("plasma: tabulated profile needs >= 2 (Z, n) pairs");
  }
  for (std::size_t i = 0; i < Z.size(); ++i) {
    if (!(relative[i] >= 0.0)) throw DomainError("plasma: density must be >= 0");
    if (i > 0 && !(Z[i] > Z[i - 1])) throw DomainError("plasma: Z must be strictly increasing");
  }
  p.table_N_.assign(Z.size(), 0.0);
  for (std::size_t i = 1; i < Z.size(); ++i) {
    p.table_N_[i] = p.table_N_[i - 1] + 0.5 * (relative[i] + relative[i - 1]) * (Z[i] - Z[i - 1]);
  }
  p.table_Z_ = std::move(Z);
  p.table_n_ = std::move(relative);
  return p;
}

double PlasmaSetup::K() const { return kPi * kCgs.classical_electron_radius() * n0_; }

double PlasmaSetup::density(double Z) const {
  if (is_step()) return Z >= 0.0 ? n0_ : 0.0;
  if (Z < table_Z_.front()) return 0.0;
  if (Z >= table_Z_.back()) return n0_ * table_n_.back();
  const auto it = std::upper_bound(table_Z_.begin(), table_Z_.end(), Z);
  const std::size_t i = static_cast<std::size_t>(it - table_Z_.begin()) - 1;
  const double t = (Z - table_Z_[i]) / (table_Z_[i + 1] - table_Z_[i]);
  return n0_ * (table_n_[i] + t * (table_n_[i + 1] - table_n_[i]));
}

double PlasmaSetup::column(double Z) const {
  if (is_step()) return Z > 0.0 ? n0_ * Z : 0.0;
  if (Z <= table_Z_.front()) return 0.0;
  if (Z >= table_Z_.back()) {
    return n0_ * (table_N_.back() + table_n_.back() * (Z - table_Z_.back()));
  }
  const auto it = std::upper_bound(table_Z_.begin(), table_Z_.end(), Z);
  const std::size_t i = static_cast<std::size_t>(it - table_Z_.begin()) - 1;
  const double dz = Z - table_Z_[i];
  const double slope = (table_n_[i + 1] - table_n_[i]) / (table_Z_[i + 1] - table_Z_[i]);
  return n0_ * (table_N_[i] + table_n_[i] * dz + 0.5 * slope * dz * dz);
}

double PlasmaSetup::net_charge_column(double Z) const {
  const Species e = Species::electron();
  const Species ion = Species::proton();
  return ion.charge() * column(Z) + e.charge() * column(Z);
}

double longitudinal_field(const PlasmaSetup& setup, double /*x0*/, double z, double Z_e) {
  return 4.0 * kPi * kCgs.e * (setup.column(z) - setup.column(Z_e));
}

double r0(const PhaseFunctions& pf, const PlasmaSetup& setup, double x0, double Z) {
  require_nonnegative_Z(Z, "r0");
  if (!setup.is_step()) return r0_integral(pf, setup, x0, Z);
  if (x0 <= Z) return 0.0;
  return 4.0 * setup.K() * pf.v3(pf.xi_inverse(x0 - Z));
}

double r0_integral(const PhaseFunctions& pf, const PlasmaSetup& setup, double x0, double Z,
                   const quad::Options& opt) {
  require_nonnegative_Z(Z, "r0_integral");
  if (x0 <= Z || setup.n0() == 0.0) return 0.0;
  const double n0 = setup.n0();
  const double NZ = setup.column(Z);
  auto integrand = [&](double eta) {
    const double xi = pf.xi_inverse(eta - Z);
    const double z = Z + pf.y3(xi);
    return (setup.column(z) - NZ) / n0 / pf.gamma(xi);
  };
  // Panel edges at the lab times when the tabulation knots reach Z.
  std::vector<double> cuts;
  for (double k : pf.knots()) {
    const double eta = Z + pf.xi_of(k);
    if (eta > Z && eta < x0) cuts.push_back(eta);
  }
  // Y3 is tabulated to an absolute accuracy set by its largest value, so far in the leading
  // edge the integrand carries noise far above its own size; floor the target accordingly.
  quad::Options o = opt;
  const double y3_scale = (setup.column(Z + pf.y3(pf.range_end())) - NZ) / n0;
  o.abs_tol = std::max(opt.abs_tol, opt.rel_tol * y3_scale * (x0 - Z));
  const auto r = quad::integrate_piecewise<double>(integrand, Z, x0, cuts, o);
  return 4.0 * setup.K() * r.value;
}

CorrectionState corrected_state(const PhaseFunctions& pf, const PlasmaSetup& setup, double xi) {
  if (!setup.is_step()) throw DomainError("corrected_state: only the step profile is supported");
  CorrectionState c;
  c.xi = xi;
  if (xi > 0.0) c.r0 = 4.0 * setup.K() * pf.v3(xi);
  c.s1 = std::exp(c.r0);
  const Vec2 up = pf.u_perp(xi);
  c.state = state_from_s(up, c.s1);
  const double p2 = up.norm2();
  const double m = em1_of(c.r0);
  c.beta_z1 = (p2 - m) / (2.0 + p2 + m);
  c.g = weight(pf.u_z(xi), c.r0);
  return c;
}

double corrected_displacement(const PhaseFunctions& pf, const PlasmaSetup& setup, double x0,
                              double Z, const quad::Options& opt) {
  require_nonnegative_Z(Z, "corrected_displacement");
  if (!setup.is_step()) {
    throw DomainError("corrected_displacement: only the step profile is supported");
  }
  if (x0 <= Z) return 0.0;
  const double xi = pf.xi_inverse(x0 - Z);
  const double K4 = 4.0 * setup.K();
  auto integrand = [&](double y) { return gamma_beta_z1(pf, K4, y); };
  return quad::integrate_piecewise<double>(integrand, 0.0, xi, pf.knots(), opt).value;
}

CorrectionTable CorrectionTable::build(const PhaseFunctions& pf, const PlasmaSetup& setup) {
  if (!setup.is_step()) throw DomainError("correction table: only the step profile is supported");
  CorrectionTable t;
  t.pf_ = &pf;
  t.K_ = setup.K();
  const auto knots = pf.knots();
  const double K4 = 4.0 * t.K_;

  std::vector<double> uz(kNodes), em1(kNodes), g(kNodes);
  auto fit = [&](double a, double b) {
    const auto xs = ChebSeries::nodes(a, b, kNodes);
    for (int i = 0; i < kNodes; ++i) {
      uz[i] = pf.u_z(xs[i]);
      em1[i] = em1_of(K4 * pf.v3(xs[i]));
    }
    kernels::correction_weight(uz, em1, g);
    return ChebSeries::fit(a, b, g);
  };

  struct Work {
    double a, b;
    int depth;
  };
  t.knots_.push_back(knots.front());
  double G_end = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    std::vector<Work> stack{{knots[k], knots[k + 1], 0}};
    while (!stack.empty()) {
      const Work w = stack.back();
      stack.pop_back();
      ChebSeries s = fit(w.a, w.b);
      const double mid = 0.5 * (w.a + w.b);
      if (w.depth < kMaxDepth && mid > w.a && mid < w.b &&
          s.tail() > kTableTol * s.max_coefficient()) {
        stack.push_back({mid, w.b, w.depth + 1});
        stack.push_back({w.a, mid, w.depth + 1});
        continue;
      }
      ChebSeries G = s.integral(G_end);
      G_end = G(w.b);
      t.knots_.push_back(w.b);
      t.g_.push_back(std::move(s));
      t.G_.push_back(std::move(G));
    }
  }
  return t;
}

double CorrectionTable::g(double xi) const {
  if (!(xi > 0.0)) return 0.0;
  if (xi >= knots_.back()) return weight(pf_->u_z(xi), 4.0 * K_ * pf_->v3(xi));
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), xi);
  return g_[static_cast<std::size_t>(it - knots_.begin()) - 1](xi);
}

double CorrectionTable::G(double xi) const {
  if (!(xi > 0.0)) return 0.0;
  const double end = knots_.back();
  if (xi >= end) {
    const double G_end = G_.empty() ? 0.0 : G_.back()(end);
    auto f = [&](double y) { return weight(pf_->u_z(y), 4.0 * K_ * pf_->v3(y)); };
    return G_end + quad::integrate<double>(f, end, xi, {1e-12, 0.0, 20000}).value;
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), xi);
  return G_[static_cast<std::size_t>(it - knots_.begin()) - 1](xi);
}

double CorrectionTable::T(double xi) const {
  const double y = pf_->y3(xi);
  if (!(y > 0.0)) return 0.0;
  return G(xi) / y;
}

ValidityReport validity(const PhaseFunctions& pf, const PlasmaSetup& setup,
                        const CorrectionTable& table, double Z, double xi0,
                        const ValidityThresholds& thr) {
  require_nonnegative_Z(Z, "validity");
  ValidityReport rep;
  rep.xi0 = xi0;
  const double lambda = pf.wavelength();
  const int n = std::max(256, static_cast<int>(std::ceil(64.0 * xi0 / lambda)));
  bool any_displacement = false;
  for (int i = 0; i <= n; ++i) {
    const double xi = xi0 * i / n;
    if (pf.y3(xi) > 0.0) any_displacement = true;
    const double T = table.T(xi);
    if (T > rep.T_max) {
      rep.T_max = T;
      rep.T_argmax = xi;
    }
  }
  rep.applicable = any_displacement;
  const double K = setup.K();
  rep.cond2_lhs = 2.0 * pf.y3(xi0) + xi0 + 2.0 * Z;
  rep.cond2_scale = K > 0.0 ? 2.0 * kPi / (K * lambda) : std::numeric_limits<double>::infinity();
  rep.cond2_ratio = rep.cond2_lhs * K * lambda / (2.0 * kPi);
  rep.T_pass = rep.T_max <= thr.t_max;
  rep.cond2_pass = rep.cond2_ratio <= thr.cond2;
  return rep;
}

SlingshotReport slingshot(const PhaseFunctions& pf, const PlasmaSetup& setup, const Pulse& pulse,
                          const PancakeGeometry& geometry, const ValidityThresholds& thr) {
  SlingshotReport rep;
  rep.xi0 = pulse.slowness().xi0;
  rep.K = setup.K();
  rep.zeta = pf.y3(rep.xi0);
  rep.gamma_eM = 1.0 + 2.0 * rep.K * rep.zeta * rep.zeta;
  rep.H_MeV = kCgs.electron_rest_energy() * rep.gamma_eM / kCgs.erg_per_mev;
  const CorrectionTable table = CorrectionTable::build(pf, setup);
  rep.validity = validity(pf, setup, table, 0.0, rep.xi0, thr);
  if (geometry.radius && geometry.length) {
    rep.thin_pancake = *geometry.length <= geometry.thin_ratio * *geometry.radius;
  }
  if (geometry.radius) rep.wide_pancake = *geometry.radius >= 2.0 * rep.zeta;
  return rep;
}

TransverseCorrection corrected_vector_potential(const PhaseFunctions& pf,
                                                const PlasmaSetup& setup, double x0, double z,
                                                const quad::Options& opt) {
  if (!(x0 >= 0.0)) throw DomainError("corrected_vector_potential: requires x0 >= 0");
  if (!setup.is_step()) {
    throw DomainError("corrected_vector_potential: only the step profile is supported");
  }
  TransverseCorrection out;
  const double xi = x0 - z;
  const double xi_minus = x0 + z;
  out.u0 = pf.u_perp(xi);
  // For each xi' the electrons present at (xi', xi_-') satisfy xi_-' >= xi' + 2 Y3(xi'),
  // so the light-cone integral over xi_-' reduces to the length max(0, xi_- - xi' - 2 Y3).
  if (xi > 0.0 && xi_minus > 0.0 && setup.K() > 0.0) {
    auto front = [&](double y) { return y + 2.0 * pf.y3(y); };
    double upper = xi;
    if (front(xi) > xi_minus) {
      upper = solve_increasing(front, [&](double y) { return 1.0 + 2.0 * pf.u_z(y); }, xi_minus,
                               0.0, xi)
                  .x;
    }
    auto integrand = [&](double y) {
      return pf.u_perp(y) * std::max(0.0, xi_minus - front(y));
    };
    const auto r = quad::integrate_piecewise<Vec2>(integrand, 0.0, upper, pf.breakpoints(), opt);
    out.delta_u = -setup.K() * r.value;
  }
  out.u1 = out.u0 + out.delta_u;
  const Species& sp = pf.species();
  out.a1 = -out.u1 / sp.coupling();
  return out;
}

void write_correction_csv(std::ostream& out, const PhaseFunctions& pf, const PlasmaSetup& setup,
                          const CorrectionTable& table, std::span<const double> xis) {
  CsvWriter csv(out, {"xi", "r0", "s1", "beta_z1", "dz0", "dz1", "T"});
  const double K4 = 4.0 * setup.K();
  auto integrand = [&](double y) { return gamma_beta_z1(pf, K4, y); };
  double prev = 0.0;
  double dz1 = 0.0;
  for (double xi : xis) {
    if (xi < prev) throw DomainError("correction csv: phases must be nondecreasing");
    const CorrectionState c = corrected_state(pf, setup, xi);
    if (xi > prev) {
      dz1 += quad::integrate_piecewise<double>(integrand, prev, xi, pf.knots(),
                                               {1e-12, 0.0, 20000})
                 .value;
      prev = xi;
    }
    csv.row({xi, c.r0, c.s1, c.beta_z1, xi > 0.0 ? pf.y3(xi) : 0.0, dz1, table.T(xi)});
  }
}

void write_slingshot_csv(std::ostream& out, const SlingshotReport& r) {
  CsvWriter csv(out, {"zeta", "K", "gamma_eM", "H_MeV", "Tmax", "cond2_ratio"});
  csv.row({r.zeta, r.K, r.gamma_eM, r.H_MeV, r.validity.T_max, r.validity.cond2_ratio});
}

}  // namespace planewave
