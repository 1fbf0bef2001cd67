#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "planewave/chebyshev.hpp"
#include "planewave/kinematics.hpp"
#include "planewave/pulse.hpp"

namespace planewave {

struct PhaseOptions {
  double tolerance = 1e-10;
  int panels_per_wavelength = 32;
  int nodes = 24;
  int max_refinement = 12;
};

/// Tabulated zero-density primitives for one species in one transverse profile:
///   Y_perp = int_0^xi u_perp,  Y3 = int_0^xi u_z,  Xi = xi + Y3,  V3 = int_0^xi Y3.
/// Each panel stores Chebyshev expansions; nested primitives integrate the
/// lower-level expansions exactly. Beyond the last panel the motion is ballistic
/// and all primitives continue as exact linear/quadratic extensions.
class PhaseFunctions {
 public:
  static PhaseFunctions build(const Species& species, const TransverseProfile& profile,
                              double xi_max, const PhaseOptions& opt = {});

  const Species& species() const { return species_; }
  double wavelength() const { return wavelength_; }
  double tolerance() const { return tolerance_; }
  /// End of the tabulated range; ballistic beyond.
  double range_end() const { return knots_.back(); }
  std::span<const double> knots() const { return knots_; }
  std::span<const double> breakpoints() const { return breakpoints_; }

  Vec2 u_perp(double xi) const;
  double u_z(double xi) const;
  double gamma(double xi) const { return 1.0 + u_z(xi); }
  /// Zero-density kinematic state at phase xi (s = 1).
  KinematicState state(double xi) const;

  Vec2 y_perp(double xi) const;
  double y3(double xi) const;
  double xi_of(double xi) const { return xi + y3(xi); }
  double v3(double xi) const;
  /// Inverse of Xi; identity for eta <= 0.
  double xi_inverse(double eta) const;

  /// CSV `xi,Y3,Xi,V3` on the given phases.
  void write_csv(std::ostream& out, std::span<const double> xis) const;

 private:
  struct Panel {
    ChebSeries ux, uy, uz, yx, yy, y3, v3;
  };
  std::size_t panel_index(double xi) const;

  Species species_{Species::electron()};
  double wavelength_ = 1.0;
  double tolerance_ = 1e-10;
  std::vector<double> knots_;
  std::vector<double> breakpoints_;
  std::vector<double> knot_xi_;  // Xi at knots, for bracketing the inverse
  std::vector<Panel> panels_;
  // Ballistic continuation beyond range_end().
  Vec2 end_u_perp_;
  double end_uz_ = 0.0;
  Vec2 end_y_perp_;
  double end_y3_ = 0.0;
  double end_v3_ = 0.0;
};

}  // namespace planewave
