#include "planewave/ponderomotive.hpp"

#include <cmath>

#include "planewave/constants.hpp"
#include "planewave/csv.hpp"
#include "planewave/errors.hpp"
#include "planewave/quadrature.hpp"

namespace planewave {

namespace {

void require_matching(const Species& species, const PhaseFunctions& pf) {
  if (!(species == pf.species())) {
    throw DomainError("ponderomotive: phase functions were built for species '" +
                      pf.species().label() + "', not '" + species.label() + "'");
  }
}

}  // namespace

double ponderomotive_prefactor(const Species& species, double wavelength, double gamma) {
  const double q = species.charge();
  return wavelength * wavelength * q * q / (8.0 * kPi * kPi * gamma * species.rest_energy());
}

double magnetic_force(const Species& species, const Pulse& pulse, const PhaseFunctions& pf,
                      double xi) {
  require_matching(species, pf);
  if (!(xi > 0.0) || xi > pulse.support_end()) return 0.0;
  // d(a^2)/dxi = 2 a . a' = -2 a . e, and d_z = -d/dxi.
  const double da2 = -2.0 * pulse.a_perp(xi).dot(pulse.e_perp(xi));
  const double q = species.charge();
  return q * q * da2 / (2.0 * pf.gamma(xi) * species.rest_energy());
}

double magnetic_force_envelope(const Species& species, const Pulse& pulse,
                               const PhaseFunctions& pf, double xi) {
  require_matching(species, pf);
  if (!(xi > 0.0) || xi > pulse.support_end()) return 0.0;
  const Envelope& env = pulse.envelope();
  const double eps = env.value(xi);
  const double deps = env.derivative(xi);
  const double mu = ponderomotive_prefactor(species, pulse.wavelength(), pf.gamma(xi));
  // d/dxi (eps e_p)^2 = 2 (eps e_p).(eps' e_p + eps k e_o), using e_p' = k e_o.
  const Vec2 ep = pulse.e_p(xi);
  const Vec2 eo = pulse.e_o(xi);
  const double d_sq = 2.0 * (eps * ep).dot(deps * ep + (eps * pulse.wavenumber()) * eo);
  return mu * d_sq;
}

double ponderomotive_force(const Species& species, const Pulse& pulse, const PhaseFunctions& pf,
                           double xi) {
  require_matching(species, pf);
  if (!(xi > 0.0) || xi > pulse.support_end()) return 0.0;
  const Envelope& env = pulse.envelope();
  const double d_eps2 = 2.0 * env.value(xi) * env.derivative(xi);
  const double mu = ponderomotive_prefactor(species, pulse.wavelength(), pf.gamma(xi));
  const double factor = pulse.polarization() == Polarization::linear ? 0.5 : 1.0;
  return factor * mu * d_eps2;
}

double cycle_averaged_magnetic_force(const Species& species, const Pulse& pulse,
                                     const PhaseFunctions& pf, double xi) {
  // Two successive one-period averages, i.e. a triangular window of half-width lambda.
  // A single boxcar passes the eps eps' xi sin(2 k xi) term at first order in delta.
  const double lambda = pulse.wavelength();
  auto f = [&](double x) {
    return magnetic_force(species, pulse, pf, x) * (lambda - std::abs(x - xi));
  };
  std::vector<double> cuts(pulse.breakpoints().begin(), pulse.breakpoints().end());
  cuts.push_back(xi);
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.max_intervals = 20000;
  const auto r = quad::integrate_piecewise<double>(f, xi - lambda, xi + lambda, cuts, opt);
  return r.value / (lambda * lambda);
}

ForceProfile force_profile(const Species& species, const Pulse& pulse, const PhaseFunctions& pf,
                           std::span<const double> xis) {
  ForceProfile out;
  out.delta = pulse.envelope().peak() != 0.0 ? pulse.slowness().delta : 0.0;
  out.slowness_warning = out.delta > 0.3;
  for (double x : xis) {
    out.xi.push_back(x);
    out.magnetic.push_back(magnetic_force(species, pulse, pf, x));
    out.ponderomotive.push_back(ponderomotive_force(species, pulse, pf, x));
  }
  return out;
}

void write_force_csv(std::ostream& out, const ForceProfile& profile) {
  CsvWriter csv(out, {"xi", "Fm", "Fp"});
  for (std::size_t i = 0; i < profile.xi.size(); ++i) {
    csv.row({profile.xi[i], profile.magnetic[i], profile.ponderomotive[i]});
  }
}

}  // namespace planewave
