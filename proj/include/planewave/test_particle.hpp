#pragma once

#include <memory>
#include <span>
#include <vector>

#include "planewave/kinematics.hpp"
#include "planewave/lorentz.hpp"
#include "planewave/phase_functions.hpp"
#include "planewave/pulse.hpp"
#include "planewave/zero_density.hpp"

namespace planewave {

/// A free transverse plane wave in the lab frame travelling along the unit vector n:
///   E(x) = e1 f1(phi) + e2 f2(phi),  B = n x E,  phi = x0 - n.x,
/// with (f1, f2) the profile's e_perp and (e1, e2, n) a right-handed orthonormal triad.
class LabWave {
 public:
  LabWave(std::shared_ptr<const TransverseProfile> profile, const Vec3& direction);
  /// Same, with the first polarization axis projected from `polarization_hint`.
  LabWave(std::shared_ptr<const TransverseProfile> profile, const Vec3& direction,
          const Vec3& polarization_hint);

  const TransverseProfile& profile() const { return *profile_; }
  std::shared_ptr<const TransverseProfile> profile_ptr() const { return profile_; }
  const Vec3& direction() const { return n_; }
  const Vec3& e1() const { return e1_; }
  const Vec3& e2() const { return e2_; }

  double phase(double x0, const Vec3& x) const { return x0 - n_.dot(x); }
  Vec3 electric(double x0, const Vec3& x) const;
  Vec3 magnetic(double x0, const Vec3& x) const { return n_.cross(electric(x0, x)); }
  /// Vector potential with E = -dA/dx0 (temporal gauge), zero ahead of the wavefront.
  Vec3 potential(double x0, const Vec3& x) const;

 private:
  std::shared_ptr<const TransverseProfile> profile_;
  Vec3 n_, e1_, e2_;
};

/// P = T R B: boost to the initial rest frame, rotation of the wave vector onto +z,
/// translation of the initial event to the origin.
class PoincareTransform {
 public:
  PoincareTransform(const Vec3& beta, const Mat3& rotation, const Event& translation);

  const Boost& boost() const { return boost_; }
  const Mat3& rotation() const { return rotation_; }
  const Event& translation() const { return translation_; }

  Event to_reduced(const Event& lab) const;
  Event to_lab(const Event& reduced) const;
  /// Four-vector (displacement or four-velocity) back to the lab; no translation.
  Event vector_to_lab(const Event& reduced) const;
  Event vector_to_reduced(const Event& lab) const;

 private:
  Boost boost_;
  Mat3 rotation_;
  Event translation_;
};

/// The reduced-frame wave along +z truncated by theta(xi): only the part of the lab
/// wave that has not yet reached the initial event survives.
class CutWave final : public TransverseProfile {
 public:
  CutWave(std::shared_ptr<const TransverseProfile> lab_profile, double phase_at_event,
          double doppler, const Vec2& m1, const Vec2& m2);

  Vec2 e_perp(double xi) const override;
  Vec2 a_perp(double xi) const override;
  double support_end() const override { return end_; }
  std::span<const double> breakpoints() const override { return breakpoints_; }
  double wavelength() const override { return lab_->wavelength() / doppler_; }

  /// Lab phase corresponding to the reduced phase xi.
  double lab_phase(double xi) const { return phase_at_event_ + doppler_ * xi; }
  double doppler() const { return doppler_; }
  double phase_at_event() const { return phase_at_event_; }
  /// Reduced-frame images of the lab polarization axes (each of length `doppler`).
  const Vec2& m1() const { return m1_; }
  const Vec2& m2() const { return m2_; }

 private:
  std::shared_ptr<const TransverseProfile> lab_;
  double phase_at_event_;
  double doppler_;
  Vec2 m1_, m2_;
  Vec2 a_event_;
  double end_ = 0.0;
  std::vector<double> breakpoints_;
};

struct Reduction {
  PoincareTransform transform;
  std::shared_ptr<const CutWave> wave;
  /// gamma - u.n in the lab, conserved along the motion.
  double doppler = 1.0;
};

/// Builds the reduction for a particle at x_init with velocity beta_init at lab time 0.
Reduction reduce(const LabWave& wave, const Vec3& x_init, const Vec3& beta_init);

struct TestParticleOptions {
  PhaseOptions phase;
  /// Extra reduced-frame phase tabulated beyond the cut wave's support, in wavelengths.
  double margin_wavelengths = 1.0;
};

/// Solution of one test particle in a lab plane wave, reusable for many output times.
class TestParticleSolution {
 public:
  TestParticleSolution(const Species& species, const LabWave& wave, const Vec3& x_init,
                       const Vec3& beta_init, const TestParticleOptions& opt = {});

  const Reduction& reduction() const { return reduction_; }
  const PhaseFunctions& phase_functions() const { return pf_; }

  /// Lab sample at reduced phase xi >= 0.
  TrajectorySample at_phase(double xi) const;
  /// Lab sample at lab time x0 >= 0 (matched by a monotone root solve in xi).
  TrajectorySample at_time(double x0) const;

 private:
  Reduction reduction_;
  PhaseFunctions pf_;
};

/// Convenience wrapper: samples at each requested lab time. Times < 0 are a domain error.
std::vector<TrajectorySample> solve_arbitrary_ic(const Species& species, const LabWave& wave,
                                                 const Vec3& x_init, const Vec3& beta_init,
                                                 std::span<const double> times,
                                                 const TestParticleOptions& opt = {});

}  // namespace planewave
