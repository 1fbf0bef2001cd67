#pragma once
// Shared fixtures for the unit tests.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "planewave/phase_functions.hpp"
#include "planewave/pulse.hpp"

namespace testing {

inline constexpr double kLambda = 1e-4;
inline constexpr std::uint64_t kSeed = 20130517;

inline std::shared_ptr<const planewave::Pulse> make_pulse(planewave::EnvelopeKind kind,
                                                          planewave::Polarization pol, double w,
                                                          double width,
                                                          double lambda = kLambda) {
  using namespace planewave;
  const double peak = Pulse::field_for_amplitude(w, lambda);
  Envelope env = kind == EnvelopeKind::gaussian ? Envelope::gaussian(peak, width)
                 : kind == EnvelopeKind::cutoff_polynomial
                     ? Envelope::cutoff_polynomial(peak, width)
                     : Envelope::constant_window(peak, width);
  return std::make_shared<const Pulse>(std::move(env), lambda, pol);
}

inline planewave::PhaseFunctions phase_for(const planewave::Pulse& p,
                                           const planewave::Species& s =
                                               planewave::Species::electron()) {
  return planewave::PhaseFunctions::build(s, p, p.support_end() + p.wavelength());
}

/// Circularly polarized window whose potential is exactly the envelope form
/// a_perp = -(E0/k) e_p on (0, L] (a jump at the wavefront), so that |a_perp| = E0/k there.
class EnvelopeFormWindow final : public planewave::TransverseProfile {
 public:
  EnvelopeFormWindow(double w, double length, double lambda)
      : E0_(planewave::Pulse::field_for_amplitude(w, lambda)),
        L_(length),
        lambda_(lambda),
        k_(2.0 * 3.141592653589793 / lambda),
        bps_{0.0, length} {}
  planewave::Vec2 e_perp(double xi) const override {
    if (!(xi > 0.0) || xi > L_) return {};
    return {E0_ * std::cos(k_ * xi), E0_ * std::sin(k_ * xi)};
  }
  planewave::Vec2 a_perp(double xi) const override {
    const double x = std::min(xi, L_);
    if (!(x > 0.0)) return {};
    return {-E0_ / k_ * std::sin(k_ * x), E0_ / k_ * std::cos(k_ * x)};
  }
  double support_end() const override { return L_; }
  std::span<const double> breakpoints() const override { return bps_; }
  double wavelength() const override { return lambda_; }

 private:
  double E0_, L_, lambda_, k_;
  std::vector<double> bps_;
};

/// max |a - b| / max |b| over paired samples.
template <class A, class B>
double normwise_relative(const A& a, const B& b) {
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    err = std::max(err, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale > 0.0 ? err / scale : err;
}

}  // namespace testing
