#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "planewave/plasma_correction.hpp"
#include "planewave/test_particle.hpp"
#include "planewave/zero_density.hpp"

namespace planewave::oracle {

struct OracleConfig {
  /// Fixed RK4 step in x0 (cm); must satisfy 0 < step <= lambda/50.
  double step = 0.0;
  /// Cut steps at the profile breakpoints and keep stage evaluations on one smooth piece.
  bool align_breakpoints = true;
  /// Adds the frozen longitudinal field of a static-ion plasma, with Z_e the initial z.
  std::optional<PlasmaSetup> plasma;
};

struct OracleSample {
  TrajectorySample sample;
  /// gamma_E^2 - 1 - |u|^2 with gamma_E integrated from the power balance.
  double mass_shell_res = 0.0;
  /// |u_t + (q/mc^2) A_t - const| for the components transverse to the wave vector.
  double canon_perp_res = 0.0;
};

/// Integrates dx/dx0 = beta, du/dx0 = (q/mc^2)(E + beta x B) from lab time 0, returning
/// samples at each requested time (nondecreasing, >= 0).
std::vector<OracleSample> integrate(const Species& species, const LabWave& wave,
                                    const Vec3& x_init, const Vec3& beta_init,
                                    std::span<const double> times, const OracleConfig& config);

struct ConvergenceResult {
  double order = 0.0;
  double diff_coarse = 0.0;  // max over sample times of |x_h - x_{h/2}|
  double diff_fine = 0.0;    // max over sample times of |x_{h/2} - x_{h/4}|
  bool skipped = false;      // differences at rounding level; order undefined
};

/// Richardson step-halving estimate of the global order from positions at 20 equispaced
/// times in (0, t_end].
ConvergenceResult convergence_order(const Species& species, const LabWave& wave,
                                    const Vec3& x_init, const Vec3& beta_init, double t_end,
                                    const OracleConfig& coarse);

/// Trajectory CSV with the extra columns `mass_shell_res,canon_perp_res`.
void write_oracle_csv(std::ostream& out, std::span<const OracleSample> samples);

}  // namespace planewave::oracle
