#pragma once

#include <iosfwd>
#include <span>

#include "planewave/kinematics.hpp"
#include "planewave/phase_functions.hpp"
#include "planewave/pulse.hpp"

namespace planewave {

/// Position and state of a particle (or fluid element) at lab time x0.
struct TrajectorySample {
  double x0 = 0.0;
  Vec2 x_perp;
  double z = 0.0;
  KinematicState state;

  Vec3 position() const { return {x_perp.x, x_perp.y, z}; }
};

/// Exact zero-density state at phase xi straight from the profile's a_perp.
KinematicState state_zero_density(const Species& species, const TransverseProfile& profile,
                                  double xi);

/// Lagrangian map x(x0, X) of the element initially at X.
TrajectorySample position_forward(const PhaseFunctions& pf, double x0, const Vec3& X);

/// Inverse map X(x0, x).
Vec3 position_inverse(const PhaseFunctions& pf, double x0, const Vec3& x);

/// Longitudinal displacement z(x0, Z) - Z = Y3(Xi^-1(x0 - Z)).
double displacement(const PhaseFunctions& pf, double x0, double Z);

struct ZetaResult {
  double zeta = 0.0;          // Y3(xi_check)
  double reach_offset = 0.0;  // Xi(xi_check): reach time minus Z
};

ZetaResult zeta_at_phase(const PhaseFunctions& pf, double xi_check);

/// CSV `x0,z,x,y,uz,ux,uy,gamma,s`.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples);

}  // namespace planewave
