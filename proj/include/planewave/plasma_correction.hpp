#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "planewave/chebyshev.hpp"
#include "planewave/kinematics.hpp"
#include "planewave/phase_functions.hpp"
#include "planewave/pulse.hpp"
#include "planewave/quadrature.hpp"

namespace planewave {

/// Cold electron/ion plasma with static ions and the same initial profile for both.
/// The default profile is the step n0 * theta(Z).
class PlasmaSetup {
 public:
  explicit PlasmaSetup(double n0);
  /// Relative density samples (Z_i, n_i / n0), linear in between, zero before the first
  /// sample and constant after the last.
  static PlasmaSetup tabulated(double n0, std::vector<double> Z, std::vector<double> relative);

  double n0() const { return n0_; }
  /// K = pi e^2 n0 / (m_e c^2) in 1/cm^2.
  double K() const;
  bool is_step() const { return table_Z_.empty(); }

  double density(double Z) const;
  /// N(Z) = int_{-inf}^Z n, in 1/cm^2.
  double column(double Z) const;
  /// Sum over species of q_h N_h(Z); zero by construction.
  double net_charge_column(double Z) const;

 private:
  double n0_;
  std::vector<double> table_Z_;
  std::vector<double> table_n_;
  std::vector<double> table_N_;
};

/// E^z(x0, z) felt by the electrons initially at Z_e, now at z: 4 pi e [N(z) - N(Z_e)].
double longitudinal_field(const PlasmaSetup& setup, double x0, double z, double Z_e);

/// r0(x0, Z) = 4K V3(Xi^-1(x0 - Z)); step profile only.
double r0(const PhaseFunctions& pf, const PlasmaSetup& setup, double x0, double Z);
/// Same exponent from the defining time integral of the longitudinal force along the
/// zero-density trajectory. Works for any profile.
double r0_integral(const PhaseFunctions& pf, const PlasmaSetup& setup, double x0, double Z,
                   const quad::Options& opt = {1e-12, 0.0, 20000});

/// First corrected kinematics at phase xi (step profile, so independent of Z >= 0).
struct CorrectionState {
  double xi = 0.0;
  double r0 = 0.0;
  double s1 = 1.0;
  double beta_z1 = 0.0;
  double g = 0.0;
  KinematicState state;  // recovered from (u_perp^(0), s1)
};

CorrectionState corrected_state(const PhaseFunctions& pf, const PlasmaSetup& setup, double xi);

/// Delta z^(1)(x0, Z) = int_0^{Xi^-1(x0 - Z)} gamma^(0) beta_z^(1) by adaptive quadrature.
double corrected_displacement(const PhaseFunctions& pf, const PlasmaSetup& setup, double x0,
                              double Z, const quad::Options& opt = {1e-12, 0.0, 20000});

/// Piecewise-Chebyshev tabulation of g and its primitive G on the phase-function panels.
/// Keeps a pointer to `pf`, which must outlive the table.
class CorrectionTable {
 public:
  static CorrectionTable build(const PhaseFunctions& pf, const PlasmaSetup& setup);

  double g(double xi) const;
  double G(double xi) const;
  /// T = G / Y3; zero where Y3 vanishes.
  double T(double xi) const;

 private:
  const PhaseFunctions* pf_ = nullptr;
  double K_ = 0.0;
  std::vector<double> knots_;
  std::vector<ChebSeries> g_, G_;
};

struct ValidityThresholds {
  double t_max = 0.1;
  double cond2 = 0.1;
};

struct ValidityReport {
  bool applicable = true;  // false when Y3 = 0 on the whole window
  double xi0 = 0.0;
  double T_max = 0.0;
  double T_argmax = 0.0;
  double cond2_lhs = 0.0;    // 2 Y3(xi0) + xi0 + 2 Z
  double cond2_scale = 0.0;  // 2 pi / (K lambda), infinite for K = 0
  double cond2_ratio = 0.0;
  bool T_pass = true;
  bool cond2_pass = true;
  bool pass() const { return T_pass && cond2_pass; }
};

ValidityReport validity(const PhaseFunctions& pf, const PlasmaSetup& setup,
                        const CorrectionTable& table, double Z, double xi0,
                        const ValidityThresholds& thr = {});

/// Pancake dimensions used only for the qualitative slingshot conditions.
struct PancakeGeometry {
  std::optional<double> radius;  // R (cm)
  std::optional<double> length;  // l (cm)
  double thin_ratio = 0.1;       // l/R must not exceed this
};

struct SlingshotReport {
  double zeta = 0.0;
  double K = 0.0;
  double gamma_eM = 1.0;
  double H_MeV = 0.0;
  double xi0 = 0.0;
  ValidityReport validity;
  std::optional<bool> thin_pancake;  // l << R
  std::optional<bool> wide_pancake;  // R >= 2 zeta
};

SlingshotReport slingshot(const PhaseFunctions& pf, const PlasmaSetup& setup, const Pulse& pulse,
                          const PancakeGeometry& geometry = {},
                          const ValidityThresholds& thr = {});

struct TransverseCorrection {
  Vec2 u0;        // u_perp^(0)(x0 - z)
  Vec2 u1;        // u_perp^(1)(x0, z)
  Vec2 a1;        // A_perp^(1) = -m c^2 u1 / q (statvolt)
  Vec2 delta_u;   // u1 - u0
};

/// First correction of the transverse momentum: light-cone integral of n^(0) beta_perp^(0)
/// with n^(0) = n0 theta(Z^(0)) gamma^(0).
TransverseCorrection corrected_vector_potential(const PhaseFunctions& pf,
                                                const PlasmaSetup& setup, double x0, double z,
                                                const quad::Options& opt = {1e-10, 0.0, 20000});

/// CSV `xi,r0,s1,beta_z1,dz0,dz1,T` for increasing phases xi (Z >= 0 only enters via x0).
void write_correction_csv(std::ostream& out, const PhaseFunctions& pf, const PlasmaSetup& setup,
                          const CorrectionTable& table, std::span<const double> xis);

/// CSV `zeta,K,gamma_eM,H_MeV,Tmax,cond2_ratio`.
void write_slingshot_csv(std::ostream& out, const SlingshotReport& report);

}  // namespace planewave
