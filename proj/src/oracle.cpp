#include "planewave/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "planewave/constants.hpp"
#include "planewave/csv.hpp"
#include "planewave/errors.hpp"
#include "planewave/roots.hpp"

namespace planewave::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct State {
  Vec3 x;
  Vec3 u;
  double gamma_e = 1.0;
};

State axpy(const State& y, double h, const State& k) {
  return {y.x + h * k.x, y.u + h * k.u, y.gamma_e + h * k.gamma_e};
}

class System {
 public:
  System(const Species& species, const LabWave& wave, const OracleConfig& cfg, double Z_e)
      : kappa_(species.coupling()), wave_(wave), cfg_(cfg), Z_e_(Z_e) {
    bp_.push_back(0.0);
    for (double p : wave.profile().breakpoints()) bp_.push_back(p);
    std::sort(bp_.begin(), bp_.end());
    bp_.erase(std::unique(bp_.begin(), bp_.end()), bp_.end());
  }

  double phase(double x0, const State& y) const { return x0 - wave_.direction().dot(y.x); }

  std::size_t piece_of(double phi) const {
    return static_cast<std::size_t>(std::upper_bound(bp_.begin(), bp_.end(), phi) - bp_.begin());
  }
  std::size_t pieces() const { return bp_.size(); }
  double breakpoint(std::size_t i) const { return bp_[i]; }

  State rhs(double x0, const State& y, std::size_t piece) const {
    double phi = phase(x0, y);
    if (cfg_.align_breakpoints) {
      const double lo = piece > 0 ? std::nextafter(bp_[piece - 1], kInf) : -kInf;
      const double hi = piece < bp_.size() ? std::nextafter(bp_[piece], -kInf) : kInf;
      phi = std::clamp(phi, lo, hi);
    }
    const Vec2 f = wave_.profile().e_perp(phi);
    Vec3 e = f.x * wave_.e1() + f.y * wave_.e2();
    const Vec3 b = wave_.direction().cross(e);
    if (cfg_.plasma) e.z += longitudinal_field(*cfg_.plasma, x0, y.x.z, Z_e_);
    const double gamma = std::sqrt(1.0 + y.u.norm2());
    const Vec3 beta = y.u / gamma;
    State d;
    d.x = beta;
    d.u = kappa_ * (e + beta.cross(b));
    d.gamma_e = kappa_ * beta.dot(e);
    return d;
  }

  State rk4(double x0, const State& y, double h, std::size_t piece) const {
    const State k1 = rhs(x0, y, piece);
    const State k2 = rhs(x0 + 0.5 * h, axpy(y, 0.5 * h, k1), piece);
    const State k3 = rhs(x0 + 0.5 * h, axpy(y, 0.5 * h, k2), piece);
    const State k4 = rhs(x0 + h, axpy(y, h, k3), piece);
    State out;
    out.x = y.x + (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    out.u = y.u + (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    out.gamma_e = y.gamma_e + (h / 6.0) * (k1.gamma_e + 2.0 * k2.gamma_e + 2.0 * k3.gamma_e +
                                           k4.gamma_e);
    return out;
  }

  Vec3 canonical(double x0, const State& y) const {
    const Vec3& n = wave_.direction();
    const Vec3 ut = y.u - n.dot(y.u) * n;
    return ut + kappa_ * wave_.potential(x0, y.x);
  }

 private:
  double kappa_;
  const LabWave& wave_;
  const OracleConfig& cfg_;
  double Z_e_;
  std::vector<double> bp_;
};

bool finite(const State& y) {
  return std::isfinite(y.x.norm2()) && std::isfinite(y.u.norm2()) && std::isfinite(y.gamma_e);
}

// Budget of RK4 steps per call; strong pulses stretch the lab crossing time as w^2.
constexpr double kMaxSteps = 1e9;

}  // namespace

std::vector<OracleSample> integrate(const Species& species, const LabWave& wave,
                                    const Vec3& x_init, const Vec3& beta_init,
                                    std::span<const double> times, const OracleConfig& cfg) {
  if (!(beta_init.norm2() < 1.0)) throw DomainError("oracle: |beta_init| must be < 1");
  const double lambda = wave.profile().wavelength();
  if (!(cfg.step > 0.0) || cfg.step > lambda / 50.0 * (1.0 + 1e-12)) {
    throw DomainError("oracle: step must lie in (0, lambda/50]");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
      throw DomainError("oracle: output times must be nondecreasing and >= 0");
    }
  }

  if (!times.empty() && times.back() / cfg.step > kMaxSteps) {
    std::ostringstream msg;
    msg << "last output time " << times.back() << " cm needs more than " << kMaxSteps
        << " steps of " << cfg.step << " cm";
    throw NumericalError("oracle", msg.str());
  }

  const System sys(species, wave, cfg, x_init.z);
  const double g0 = 1.0 / std::sqrt(1.0 - beta_init.norm2());
  State y{x_init, g0 * beta_init, g0};
  double x0 = 0.0;
  std::size_t piece = sys.piece_of(sys.phase(0.0, y));
  const Vec3 canon0 = sys.canonical(0.0, y);
  const Vec3& n = wave.direction();

  auto sample = [&]() {
    OracleSample s;
    s.sample.x0 = x0;
    s.sample.x_perp = y.x.xy();
    s.sample.z = y.x.z;
    s.sample.state = state_from_momentum(y.u);
    s.mass_shell_res = y.gamma_e * y.gamma_e - 1.0 - y.u.norm2();
    s.canon_perp_res = (sys.canonical(x0, y) - canon0).norm();
    return s;
  };

  std::vector<OracleSample> out;
  out.reserve(times.size());
  for (double target : times) {
    while (x0 < target) {
      double h = std::min(cfg.step, target - x0);
      const bool lands_on_target = h == target - x0;
      State next = sys.rk4(x0, y, h, piece);
      bool crossed = false;
      if (cfg.align_breakpoints && piece < sys.pieces()) {
        const double p = sys.breakpoint(piece);
        if (sys.phase(x0 + h, next) >= p) {
          crossed = true;
          if (sys.phase(x0, y) < p) {
            auto phase_after = [&](double hh) { return sys.phase(x0 + hh, sys.rk4(x0, y, hh, piece)); };
            auto slope = [&](double hh) {
              const State s = sys.rk4(x0, y, hh, piece);
              return 1.0 - n.dot(s.u) / std::sqrt(1.0 + s.u.norm2());
            };
            h = solve_increasing(phase_after, slope, p, 0.0, h).x;
            next = sys.rk4(x0, y, h, piece);
          } else {
            h = 0.0;
            next = y;
          }
        }
      }
      if (!finite(next) || next.u.norm2() > 1e300) {
        std::ostringstream msg;
        msg << "integration blew up after x0 = " << x0 << " (last good state kept)";
        throw NumericalError("oracle", msg.str());
      }
      y = next;
      x0 = (lands_on_target && !crossed) ? target : x0 + h;
      if (crossed) ++piece;
    }
    out.push_back(sample());
  }
  return out;
}

ConvergenceResult convergence_order(const Species& species, const LabWave& wave,
                                    const Vec3& x_init, const Vec3& beta_init, double t_end,
                                    const OracleConfig& coarse) {
  constexpr int kSamples = 20;
  std::vector<double> times(kSamples);
  for (int i = 0; i < kSamples; ++i) times[i] = t_end * (i + 1) / kSamples;
  std::array<std::vector<OracleSample>, 3> runs;
  OracleConfig cfg = coarse;
  for (auto& run : runs) {
    run = integrate(species, wave, x_init, beta_init, times, cfg);
    cfg.step *= 0.5;
  }
  ConvergenceResult r;
  double extent = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const Vec3 p0 = runs[0][i].sample.position();
    const Vec3 p1 = runs[1][i].sample.position();
    const Vec3 p2 = runs[2][i].sample.position();
    r.diff_coarse = std::max(r.diff_coarse, (p0 - p1).norm());
    r.diff_fine = std::max(r.diff_fine, (p1 - p2).norm());
    extent = std::max(extent, p2.norm());
  }
  // Rounding accumulates roughly as a random walk over the finest run's steps.
  const double scale = std::max({extent, t_end, wave.profile().wavelength()});
  const double fine_steps = std::max(1.0, t_end / cfg.step);
  const double floor =
      std::max(1e-14, 16.0 * std::sqrt(fine_steps) * std::numeric_limits<double>::epsilon()) *
      scale;
  if (r.diff_fine <= floor || r.diff_coarse <= floor) {
    r.skipped = true;
    return r;
  }
  r.order = std::log2(r.diff_coarse / r.diff_fine);
  return r;
}

void write_oracle_csv(std::ostream& out, std::span<const OracleSample> samples) {
  CsvWriter csv(out, {"x0", "z", "x", "y", "uz", "ux", "uy", "gamma", "s", "mass_shell_res",
                      "canon_perp_res"});
  for (const auto& o : samples) {
    const auto& s = o.sample;
    csv.row({s.x0, s.z, s.x_perp.x, s.x_perp.y, s.state.u_z, s.state.u_perp.x, s.state.u_perp.y,
             s.state.gamma, s.state.s, o.mass_shell_res, o.canon_perp_res});
  }
}

}  // namespace planewave::oracle
