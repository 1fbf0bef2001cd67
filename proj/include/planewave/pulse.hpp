#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "planewave/quadrature.hpp"
#include "planewave/vec.hpp"

namespace planewave {

/// A transverse field profile e_perp(xi) of a plane wave travelling along +z,
/// vanishing for xi <= 0, together with its phase primitive a_perp = -int_0^xi e_perp.
class TransverseProfile {
 public:
  virtual ~TransverseProfile() = default;

  virtual Vec2 e_perp(double xi) const = 0;
  virtual Vec2 a_perp(double xi) const = 0;
  /// e_perp vanishes identically beyond this phase.
  virtual double support_end() const = 0;
  /// Phases where e_perp (or its derivative) may jump; sorted, within [0, support_end].
  virtual std::span<const double> breakpoints() const = 0;
  virtual double wavelength() const = 0;
};

enum class EnvelopeKind { gaussian, cutoff_polynomial, constant_window, tabulated };
enum class Polarization { linear, circular };

/// Slowly varying amplitude eps_s(xi) in statvolt/cm; zero for xi <= 0.
class Envelope {
 public:
  /// peak * exp(-((xi - center)/sigma)^2), truncated where it drops below 1e-12 of the
  /// peak. The center is moved forward if needed so the truncated support starts at xi >= 0.
  static Envelope gaussian(double peak, double sigma, std::optional<double> center = {});
  /// peak * 16 xi^2 (L - xi)^2 / L^4 on [0, L]: a C^1 bump with maximum at L/2.
  static Envelope cutoff_polynomial(double peak, double length);
  /// peak on (0, L].
  static Envelope constant_window(double peak, double length);
  /// Linear interpolation of (xi, eps) samples; zero outside the table and for xi <= 0.
  static Envelope tabulated(std::vector<double> xi, std::vector<double> eps);
  /// Reads two-column text "# xi epsilon" (cm, statvolt/cm).
  static Envelope read_tabulated(std::istream& in);
  static Envelope load_tabulated(const std::filesystem::path& path);

  double value(double xi) const;
  /// Right derivative (one-sided at breakpoints).
  double derivative(double xi) const;

  EnvelopeKind kind() const { return kind_; }
  double peak() const { return peak_; }
  double support_begin() const { return begin_; }
  double support_end() const { return end_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  /// Gaussian center / width (zero for other kinds).
  double center() const { return center_; }
  double sigma() const { return sigma_; }
  /// Same shape scaled to a new peak value.
  Envelope rescaled(double new_peak) const;

 private:
  EnvelopeKind kind_ = EnvelopeKind::constant_window;
  double peak_ = 0.0;
  double begin_ = 0.0;
  double end_ = 0.0;
  double center_ = 0.0;
  double sigma_ = 0.0;
  std::vector<double> table_xi_;
  std::vector<double> table_eps_;
  std::vector<double> breakpoints_;
};

struct SlownessReport {
  double delta = 0.0;  // sup lambda |eps'/eps| over the support interior
  double xi0 = 0.0;    // first maximum of eps
};

/// Modulated monochromatic wave e_perp = eps_s(xi) e_o(xi).
class Pulse final : public TransverseProfile {
 public:
  /// `wavelength` in cm. `quadrature_tol` controls the cached primitive a_perp.
  Pulse(Envelope envelope, double wavelength, Polarization polarization,
        double quadrature_tol = 1e-12);

  /// Field amplitude (statvolt/cm) whose dimensionless amplitude e eps/(k m_e c^2) is w.
  static double field_for_amplitude(double w, double wavelength);

  Vec2 e_perp(double xi) const override;
  Vec2 a_perp(double xi) const override;
  double support_end() const override { return envelope_.support_end(); }
  std::span<const double> breakpoints() const override { return envelope_.breakpoints(); }
  double wavelength() const override { return wavelength_; }

  double wavenumber() const { return k_; }
  Polarization polarization() const { return polarization_; }
  const Envelope& envelope() const { return envelope_; }

  /// Polarization basis e_o and e_p = -(1/k) e_o' for circular, sin(k xi) x for linear.
  Vec2 e_o(double xi) const;
  Vec2 e_p(double xi) const;

  /// The slowly-varying-envelope approximation -(eps_s/k) e_p. Diagnostic only.
  Vec2 a_perp_envelope(double xi) const;
  /// w(xi) = e eps_s(xi) / (k m_e c^2).
  double dimensionless_amplitude(double xi) const;
  SlownessReport slowness() const;

 private:
  Envelope envelope_;
  double wavelength_;
  double k_;
  Polarization polarization_;
  quad::Options quad_opt_;
  std::vector<double> knots_;
  std::vector<Vec2> knot_a_;
};

}  // namespace planewave
