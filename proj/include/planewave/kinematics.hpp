#pragma once

#include <string>

#include "planewave/constants.hpp"
#include "planewave/vec.hpp"

namespace planewave {

/// A charged particle species: rest mass in grams, signed charge in statcoulomb.
class Species {
 public:
  Species(double mass, double charge, std::string label);

  static Species electron();
  static Species positron();
  static Species proton();

  double mass() const { return mass_; }
  double charge() const { return charge_; }
  const std::string& label() const { return label_; }
  double rest_energy() const { return mass_ * kCgs.c * kCgs.c; }
  /// q/(m c^2), in 1/statvolt.
  double coupling() const { return charge_ / rest_energy(); }

  friend bool operator==(const Species& a, const Species& b) {
    return a.mass_ == b.mass_ && a.charge_ == b.charge_;
  }

 private:
  double mass_;
  double charge_;
  std::string label_;
};

/// Dimensionless kinematic state: transverse and longitudinal four-velocity,
/// Lorentz factor and the light-cone variable s = gamma - u_z.
struct KinematicState {
  Vec2 u_perp;
  double u_z = 0.0;
  double gamma = 1.0;
  double s = 1.0;

  Vec3 u() const { return {u_perp.x, u_perp.y, u_z}; }
  Vec3 beta() const { return u() / gamma; }
  /// gamma^2 - |u|^2 - 1, relative to gamma^2.
  double mass_shell_residual() const;
};

KinematicState rest_state();

/// Recovers the full state from (u_perp, s). Throws DomainError unless s > 0.
KinematicState state_from_s(const Vec2& u_perp, double s);

/// Builds the state from the spatial four-velocity; s is formed without cancellation.
KinematicState state_from_momentum(const Vec3& u);

/// u_perp = -q a_perp / (m c^2); a_perp in statvolt.
Vec2 transverse_momentum(const Species& species, const Vec2& a_perp);

}  // namespace planewave
