#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "planewave/constants.hpp"
#include "planewave/phase_functions.hpp"
#include "support.hpp"

using namespace planewave;
using testing::kLambda;

TEST_CASE("phase functions: zero pulse gives Xi = xi and vanishing primitives") {
  const Pulse p(Envelope::constant_window(0.0, 1e-3), kLambda, Polarization::linear);
  const PhaseFunctions pf = PhaseFunctions::build(Species::electron(), p, 2e-3);
  for (double xi : {-1e-3, 0.0, 3e-4, 1e-3, 5e-3}) {
    CHECK(pf.y3(xi) == 0.0);
    CHECK(pf.v3(xi) == 0.0);
    CHECK(pf.xi_of(xi) == xi);
    CHECK(pf.xi_inverse(xi) == doctest::Approx(xi).epsilon(1e-15));
  }
}

TEST_CASE("phase functions: envelope-form circular window has linear Y3 and quadratic V3") {
  const double w = 1.3, L = 1e-3;
  const testing::EnvelopeFormWindow prof(w, L, kLambda);
  const PhaseFunctions pf = PhaseFunctions::build(Species::electron(), prof, 2 * L);
  for (int i = 1; i <= 200; ++i) {
    const double xi = L * i / 200.0;
    CHECK(pf.y3(xi) == doctest::Approx(w * w * xi / 2).epsilon(1e-9));
    CHECK(pf.xi_of(xi) == doctest::Approx((1 + w * w / 2) * xi).epsilon(1e-9));
    CHECK(pf.v3(xi) == doctest::Approx(w * w * xi * xi / 4).epsilon(1e-9));
    CHECK(pf.u_z(xi) == doctest::Approx(w * w / 2).epsilon(1e-9));
  }
}

TEST_CASE("phase functions: exact window primitives from the integrated carrier") {
  const double w = 0.8, L = 1e-3;
  const double k = 2 * kPi / kLambda;
  const auto lin = testing::make_pulse(EnvelopeKind::constant_window, Polarization::linear, w, L);
  const auto circ =
      testing::make_pulse(EnvelopeKind::constant_window, Polarization::circular, w, L);
  const PhaseFunctions pl = testing::phase_for(*lin);
  const PhaseFunctions pc = testing::phase_for(*circ);
  for (int i = 1; i <= 300; ++i) {
    const double xi = L * i / 300.0;
    // Linear: u_z = (w^2/2) sin^2(k xi).
    CHECK(pl.y3(xi) == doctest::Approx(w * w / 4 * (xi - std::sin(2 * k * xi) / (2 * k)))
                           .epsilon(1e-9));
    // Circular from rest: |a| = (E0/k)|(sin, 1 - cos)|, so u_z = w^2 (1 - cos k xi).
    CHECK(pc.y3(xi) == doctest::Approx(w * w * (xi - std::sin(k * xi) / k)).epsilon(1e-9));
    CHECK(pc.v3(xi) ==
          doctest::Approx(w * w * (xi * xi / 2 + (std::cos(k * xi) - 1) / (k * k)))
              .epsilon(1e-9));
  }
}

TEST_CASE("phase functions: Xi inverse on the envelope-form window with w = sqrt 2") {
  // Xi(xi) = 2 xi on the window, so Xi^-1(2) = 1.
  const testing::EnvelopeFormWindow prof(std::sqrt(2.0), 2.0, 0.1);
  const PhaseFunctions pf = PhaseFunctions::build(Species::electron(), prof, 2.5);
  CHECK(pf.xi_inverse(2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pf.xi_inverse(-0.5) == -0.5);
}

TEST_CASE("phase functions: round trip, monotonicity and derivative identities") {
  std::mt19937_64 rng(testing::kSeed);
  for (auto kind : {EnvelopeKind::gaussian, EnvelopeKind::cutoff_polynomial,
                    EnvelopeKind::constant_window}) {
    for (auto pol : {Polarization::linear, Polarization::circular}) {
      const auto p = testing::make_pulse(kind, pol, 2.0, 5e-4);
      const PhaseFunctions pf = testing::phase_for(*p);
      const double end = pf.range_end();
      std::uniform_real_distribution<double> xd(0.0, 1.5 * end);
      double trip = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double xi = xd(rng);
        trip = std::max(trip, std::abs(pf.xi_inverse(pf.xi_of(xi)) - xi));
      }
      CHECK(trip < 1e-8);

      double prev_y3 = 0.0, prev_xi = -1.0, prev_slope = 0.0;
      for (int i = 0; i <= 2000; ++i) {
        const double xi = end * i / 2000.0;
        CHECK(pf.y3(xi) >= prev_y3 - 1e-18);
        CHECK(pf.xi_of(xi) > prev_xi);
        CHECK(pf.xi_of(xi) >= xi);
        CHECK(pf.v3(xi) >= 0.0);
        // V3 convex: its slope Y3 never decreases.
        const double slope = pf.y3(xi);
        CHECK(slope >= prev_slope - 1e-18);
        prev_slope = slope;
        prev_y3 = pf.y3(xi);
        prev_xi = pf.xi_of(xi);
      }

      const auto bps = pf.breakpoints();
      const double h = 1e-4 * kLambda;
      double e1 = 0.0, s1 = 0.0, e2 = 0.0, s2 = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double xi = xd(rng) / 1.5;
        const bool near =
            std::any_of(bps.begin(), bps.end(), [&](double b) { return std::abs(xi - b) < 3 * h; });
        if (near || xi < 3 * h) continue;
        const double dXi = (pf.xi_of(xi + h) - pf.xi_of(xi - h)) / (2 * h);
        const double dV = (pf.v3(xi + h) - pf.v3(xi - h)) / (2 * h);
        e1 = std::max(e1, std::abs(dXi - pf.gamma(xi)));
        s1 = std::max(s1, pf.gamma(xi));
        e2 = std::max(e2, std::abs(dV - pf.y3(xi)));
        s2 = std::max(s2, pf.y3(xi));
      }
      CHECK(e1 / s1 < 1e-6);
      CHECK(e2 / s2 < 1e-6);
    }
  }
}

TEST_CASE("phase functions: ballistic continuation beyond the tabulated range") {
  const auto p = testing::make_pulse(EnvelopeKind::gaussian, Polarization::linear, 1.0, 3e-4);
  const PhaseFunctions pf = testing::phase_for(*p);
  const double e = pf.range_end();
  const double uz = pf.u_z(e);
  for (double d : {1e-4, 1e-2, 1.0}) {
    CHECK(pf.u_z(e + d) == uz);
    CHECK(pf.y3(e + d) == doctest::Approx(pf.y3(e) + uz * d).epsilon(1e-13));
    CHECK(pf.v3(e + d) ==
          doctest::Approx(pf.v3(e) + pf.y3(e) * d + 0.5 * uz * d * d).epsilon(1e-13));
    CHECK((pf.y_perp(e + d) - (pf.y_perp(e) + pf.u_perp(e) * d)).norm() <
          1e-13 * (pf.y_perp(e).norm() + pf.u_perp(e).norm() * d) + 1e-30);
  }
}

TEST_CASE("phase functions: the zero-density state and heavy species") {
  const auto p = testing::make_pulse(EnvelopeKind::gaussian, Polarization::circular, 1.0, 3e-4);
  const PhaseFunctions pe = testing::phase_for(*p, Species::electron());
  const PhaseFunctions pp = testing::phase_for(*p, Species::proton());
  const double ratio = Species::proton().mass() / Species::electron().mass();
  for (double xi : {2e-4, 8e-4, 1.2e-3}) {
    const KinematicState k = pe.state(xi);
    CHECK(k.s == 1.0);
    CHECK(k.u_z == doctest::Approx(0.5 * k.u_perp.norm2()).epsilon(1e-14));
    // Same field: u_perp scales as 1/m, u_z as 1/m^2.
    CHECK(pp.u_perp(xi).norm() * ratio == doctest::Approx(pe.u_perp(xi).norm()).epsilon(1e-9));
    CHECK(pp.u_z(xi) * ratio * ratio == doctest::Approx(pe.u_z(xi)).epsilon(1e-9));
  }
}

TEST_CASE("phase functions: CSV dump") {
  const auto p = testing::make_pulse(EnvelopeKind::gaussian, Polarization::linear, 1.0, 3e-4);
  const PhaseFunctions pf = testing::phase_for(*p);
  std::ostringstream out;
  const double xs[3] = {0.0, 1e-3, 2e-3};
  pf.write_csv(out, xs);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "xi,Y3,Xi,V3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
