#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "planewave/phase_functions.hpp"
#include "planewave/pulse.hpp"

namespace planewave {

// Longitudinal forces in erg/cm (dyn). The Lorentz factor inside the prefactor is the
// zero-density gamma at the same phase, taken from `pf`; pass a PhaseFunctions built
// for a zero pulse to recover the gamma = 1 limit.

/// mu = lambda^2 q^2 / (8 pi^2 gamma m c^2).
double ponderomotive_prefactor(const Species& species, double wavelength, double gamma);

/// Exact F_m = -q^2 d_z(a_perp^2) / (2 gamma m c^2) with a_perp from the pulse quadrature.
double magnetic_force(const Species& species, const Pulse& pulse, const PhaseFunctions& pf,
                      double xi);

/// Prototype-wave form [mu (eps_s e_p)^2]' (a_perp replaced by its envelope approximation).
double magnetic_force_envelope(const Species& species, const Pulse& pulse,
                               const PhaseFunctions& pf, double xi);

/// Cycle-averaged force: (1/2) mu (eps_s^2)' for linear, mu (eps_s^2)' for circular.
double ponderomotive_force(const Species& species, const Pulse& pulse, const PhaseFunctions& pf,
                           double xi);

/// Cycle average of the exact magnetic force: a centered triangular window of half-width
/// lambda (one-period boxcar applied twice).
double cycle_averaged_magnetic_force(const Species& species, const Pulse& pulse,
                                     const PhaseFunctions& pf, double xi);

struct ForceProfile {
  std::vector<double> xi;
  std::vector<double> magnetic;
  std::vector<double> ponderomotive;
  /// Set when the pulse slowness delta exceeds 0.3 and F_p is only qualitative.
  bool slowness_warning = false;
  double delta = 0.0;
};

ForceProfile force_profile(const Species& species, const Pulse& pulse, const PhaseFunctions& pf,
                           std::span<const double> xis);

/// CSV `xi,Fm,Fp`.
void write_force_csv(std::ostream& out, const ForceProfile& profile);

}  // namespace planewave
