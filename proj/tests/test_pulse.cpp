#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "planewave/constants.hpp"
#include "planewave/errors.hpp"
#include "planewave/pulse.hpp"
#include "support.hpp"

using namespace planewave;
using testing::kLambda;

TEST_CASE("pulse: wavenumber and wavelength are consistent") {
  const auto p = testing::make_pulse(EnvelopeKind::gaussian, Polarization::linear, 1.0, 5e-4);
  CHECK(p->wavenumber() * p->wavelength() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(Pulse(Envelope::constant_window(1.0, 1.0), 0.0, Polarization::linear),
                  DomainError);
}

TEST_CASE("pulse: fields vanish ahead of the wavefront") {
  for (auto kind : {EnvelopeKind::gaussian, EnvelopeKind::cutoff_polynomial,
                    EnvelopeKind::constant_window}) {
    for (auto pol : {Polarization::linear, Polarization::circular}) {
      const auto p = testing::make_pulse(kind, pol, 1.0, 5e-4);
      for (double xi : {-1.0, -1e-9, 0.0}) {
        CHECK(p->e_perp(xi).norm() == 0.0);
        CHECK(p->a_perp(xi).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("pulse: window with linear polarization starts at (E0, 0)") {
  const double E0 = 3.0e7;
  const Pulse p(Envelope::constant_window(E0, 1e-3), kLambda, Polarization::linear);
  const Vec2 e = p.e_perp(1e-300);
  CHECK(e.x == doctest::Approx(E0));
  CHECK(e.y == 0.0);
}

TEST_CASE("pulse: circular window field has constant magnitude and |e_p| = 1") {
  const double E0 = 2.5e7;
  const Pulse p(Envelope::constant_window(E0, 1e-3), kLambda, Polarization::circular);
  std::mt19937_64 rng(testing::kSeed);
  std::uniform_real_distribution<double> xi(1e-9, 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const double x = xi(rng);
    CHECK(p.e_perp(x).norm() == doctest::Approx(E0).epsilon(1e-15));
    CHECK(p.e_p(x).norm2() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("pulse: a_perp on a window matches the integrated carrier") {
  const double E0 = 1.7e7, L = 1e-3;
  const double k = 2.0 * kPi / kLambda;
  const Pulse lin(Envelope::constant_window(E0, L), kLambda, Polarization::linear);
  const Pulse circ(Envelope::constant_window(E0, L), kLambda, Polarization::circular);
  const double scale = E0 / k;
  for (int i = 1; i <= 997; ++i) {
    const double xi = L * i / 997.0;
    const Vec2 al = lin.a_perp(xi);
    CHECK(std::abs(al.x + E0 * std::sin(k * xi) / k) < 1e-10 * scale);
    CHECK(al.y == 0.0);
    // -int_0^xi E0 (cos, sin) = -(E0/k)(sin k xi, 1 - cos k xi)
    const Vec2 ac = circ.a_perp(xi);
    CHECK(std::abs(ac.x + scale * std::sin(k * xi)) < 1e-10 * scale);
    CHECK(std::abs(ac.y + scale * (1.0 - std::cos(k * xi))) < 1e-10 * scale);
  }
  // Constant after the window.
  CHECK((lin.a_perp(2 * L) - lin.a_perp(L)).norm() == 0.0);
  CHECK((circ.a_perp(5 * L) - circ.a_perp(L)).norm() == 0.0);
}

TEST_CASE("pulse: d a_perp / d xi = -e_perp at random phases") {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (auto kind : {EnvelopeKind::gaussian, EnvelopeKind::cutoff_polynomial}) {
    for (auto pol : {Polarization::linear, Polarization::circular}) {
      const auto p = testing::make_pulse(kind, pol, 1.0, 5e-4);
      std::uniform_real_distribution<double> xi(0.0, p->support_end());
      const double h = kLambda * 1e-4;
      double err = 0.0, scale = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double x = xi(rng);
        if (x < 2 * h || x > p->support_end() - 2 * h) continue;
        const Vec2 fd = (p->a_perp(x + h) - p->a_perp(x - h)) / (2 * h);
        err = std::max(err, (fd + p->e_perp(x)).norm());
        scale = std::max(scale, p->e_perp(x).norm());
      }
      CHECK(err / scale < 1e-6);
    }
  }
}

TEST_CASE("pulse: dimensionless amplitude") {
  const double E = Pulse::field_for_amplitude(1.0, kLambda);
  const Species e = Species::electron();
  const double k = 2.0 * kPi / kLambda;
  CHECK(std::abs(e.charge()) * E == doctest::Approx(k * e.rest_energy()).epsilon(1e-15));
  const Pulse p(Envelope::constant_window(E * 2.5, 1e-3), kLambda, Polarization::linear);
  CHECK(p.dimensionless_amplitude(5e-4) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(p.dimensionless_amplitude(2e-3) == 0.0);
}

TEST_CASE("envelope: gaussian truncation and shift keep the wavefront at xi = 0") {
  const double sigma = 2e-4;
  const Envelope g = Envelope::gaussian(1.0, sigma);
  const double half = sigma * std::sqrt(12.0 * std::log(10.0));
  CHECK(g.support_begin() >= 0.0);
  CHECK(g.center() == doctest::Approx(half).epsilon(1e-12));
  CHECK(g.support_end() == doctest::Approx(2 * half).epsilon(1e-12));
  CHECK(g.value(g.center()) == 1.0);
  CHECK(g.value(g.support_end() * (1 - 1e-12)) == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK(g.value(-1e-9) == 0.0);
  CHECK(g.value(g.support_end() * 1.01) == 0.0);
  // An explicit center far enough from the origin is kept.
  const Envelope g2 = Envelope::gaussian(1.0, sigma, 3e-3);
  CHECK(g2.center() == 3e-3);
  CHECK(g2.support_begin() == doctest::Approx(3e-3 - half).epsilon(1e-12));
}

TEST_CASE("envelope: cut-off polynomial is a C1 bump with peak at L/2") {
  const double L = 1e-3;
  const Envelope p = Envelope::cutoff_polynomial(2.0, L);
  CHECK(p.value(L / 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.value(0.0) == 0.0);
  CHECK(p.value(L) == 0.0);
  CHECK(std::abs(p.derivative(0.0)) < 1e-9);
  CHECK(std::abs(p.derivative(L * (1 - 1e-12))) < 1e-6);
  const double h = L * 1e-6;
  for (double x : {0.1 * L, 0.37 * L, 0.8 * L}) {
    CHECK(p.derivative(x) ==
          doctest::Approx((p.value(x + h) - p.value(x - h)) / (2 * h)).epsilon(1e-8));
  }
}

TEST_CASE("envelope: tabulated input with header and linear interpolation") {
  std::istringstream in("# xi epsilon\n0 0\n1e-4 2.0\n3e-4 4.0\n");
  const Envelope t = Envelope::read_tabulated(in);
  CHECK(t.value(0.5e-4) == doctest::Approx(1.0));
  CHECK(t.value(2e-4) == doctest::Approx(3.0));
  CHECK(t.value(-1.0) == 0.0);
  CHECK(t.value(4e-4) == 0.0);
  CHECK(t.support_end() == doctest::Approx(3e-4));
  std::istringstream bad("# xi epsilon\n0 0\nfoo bar\n");
  CHECK_THROWS_AS(Envelope::read_tabulated(bad), DomainError);
  std::istringstream unsorted("0 0\n2e-4 1\n1e-4 1\n");
  CHECK_THROWS_AS(Envelope::read_tabulated(unsorted), DomainError);
  CHECK_THROWS_AS(Envelope::load_tabulated("/nonexistent/envelope.txt"), DomainError);
}

TEST_CASE("slowness: gaussian delta matches its closed form") {
  // lambda |eps'/eps| = 2 lambda |xi - xc| / sigma^2, largest at the truncation edge.
  for (double sigma : {2e-4, 1e-3, 5e-3}) {
    const Pulse p(Envelope::gaussian(1.0, sigma), kLambda, Polarization::linear);
    const double half = sigma * std::sqrt(12.0 * std::log(10.0));
    const double closed = 2.0 * kLambda * half / (sigma * sigma);
    const SlownessReport r = p.slowness();
    CHECK(r.delta == doctest::Approx(closed).epsilon(0.02));
    CHECK(r.delta <= closed * (1 + 1e-12));
    CHECK(std::abs(r.xi0 - p.envelope().center()) < 1e-5 * kLambda);
  }
  // Width much larger than lambda gives a small delta.
  const Pulse wide(Envelope::gaussian(1.0, 0.2), kLambda, Polarization::linear);
  CHECK(wide.slowness().delta < 0.01);
}

TEST_CASE("slowness: constant window has zero delta, empty support is rejected") {
  const Pulse p(Envelope::constant_window(1.0, 1e-3), kLambda, Polarization::circular);
  const SlownessReport r = p.slowness();
  CHECK(r.delta == 0.0);
  CHECK(r.xi0 > 0.0);
  CHECK(r.xi0 <= kLambda);
  const Pulse poly(Envelope::cutoff_polynomial(1.0, 1e-3), kLambda, Polarization::circular);
  CHECK(poly.slowness().xi0 == doctest::Approx(5e-4).epsilon(1e-6));
}

TEST_CASE("pulse: envelope shortcut for a_perp is accurate to O(delta)") {
  for (auto pol : {Polarization::linear, Polarization::circular}) {
    for (double sigma : {1e-3, 4e-3}) {
      const Pulse p(Envelope::gaussian(1.0e7, sigma), kLambda, pol);
      const double delta = p.slowness().delta;
      double err = 0.0, scale = 0.0;
      for (int i = 0; i <= 4000; ++i) {
        const double xi = p.support_end() * i / 4000.0;
        err = std::max(err, (p.a_perp(xi) - p.a_perp_envelope(xi)).norm());
        scale = std::max(scale, p.a_perp(xi).norm());
      }
      CHECK(err / scale < delta);
    }
  }
}
