#include <array>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "planewave/chebyshev.hpp"
#include "planewave/constants.hpp"
#include "planewave/errors.hpp"
#include "planewave/kernels.hpp"
#include "planewave/kinematics.hpp"
#include "planewave/lorentz.hpp"
#include "planewave/quadrature.hpp"
#include "planewave/roots.hpp"
#include "support.hpp"

using namespace planewave;

TEST_CASE("constants: Gaussian electron radius matches CODATA") {
  CHECK(std::abs(kCgs.classical_electron_radius() / kCodataElectronRadius - 1.0) < 1e-12);
}

TEST_CASE("species: electron, positron and proton parameters") {
  const Species e = Species::electron();
  const Species p = Species::positron();
  const Species H = Species::proton();
  CHECK(e.charge() < 0.0);
  CHECK(p.charge() == -e.charge());
  CHECK(p.mass() == e.mass());
  CHECK(H.mass() / e.mass() == doctest::Approx(1836.15267343).epsilon(1e-9));
  CHECK(e.rest_energy() / kCgs.erg_per_mev == doctest::Approx(0.51099895).epsilon(1e-8));
  CHECK(e.coupling() == doctest::Approx(e.charge() / e.rest_energy()));
}

TEST_CASE("kinematics: state_from_s reproduces the defining relations") {
  std::mt19937_64 rng(testing::kSeed);
  std::uniform_real_distribution<double> u(-5.0, 5.0), s(0.05, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 up{u(rng), u(rng)};
    const double sv = s(rng);
    const KinematicState k = state_from_s(up, sv);
    CHECK(k.gamma - k.u_z == doctest::Approx(sv).epsilon(1e-12));
    CHECK(std::abs(k.mass_shell_residual()) < 1e-13);
    CHECK(k.gamma >= 1.0);
  }
}

TEST_CASE("kinematics: state_from_s rejects nonpositive s") {
  CHECK_THROWS_AS(state_from_s({0.1, 0.2}, 0.0), DomainError);
  CHECK_THROWS_AS(state_from_s({0.1, 0.2}, -1.0), DomainError);
}

TEST_CASE("kinematics: |u_perp| = 1 in zero density gives u_z = 1/2, gamma = 3/2") {
  const KinematicState k = state_from_s({0.6, 0.8}, 1.0);
  CHECK(k.u_z == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k.gamma == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("kinematics: state_from_momentum keeps s accurate for ultrarelativistic forward motion") {
  // s = (1 + u_perp^2) / (gamma + u_z) exactly; the direct difference loses all digits.
  const Vec3 u{1e-3, 0.0, 1e8};
  const KinematicState k = state_from_momentum(u);
  const double expected = (1.0 + 1e-6) / (std::sqrt(1.0 + 1e-6 + 1e16) + 1e8);
  CHECK(k.s == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("kinematics: rest state") {
  const KinematicState k = rest_state();
  CHECK(k.gamma == 1.0);
  CHECK(k.s == 1.0);
  CHECK(k.u().norm() == 0.0);
}

TEST_CASE("kinematics: transverse momentum is -q a / (m c^2)") {
  const Species e = Species::electron();
  const Vec2 a{3.0, -4.0};
  const Vec2 u = transverse_momentum(e, a);
  CHECK(u.x == doctest::Approx(-e.charge() * 3.0 / e.rest_energy()));
  CHECK(u.y == doctest::Approx(e.charge() * 4.0 / e.rest_energy()));
}

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
    return std::memcmp(&x, &y, sizeof(double)) == 0;
  });
}

}  // namespace

TEST_CASE("kernels: scalar and AVX2 variants agree bitwise, including ragged tails") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available; only the scalar variant is exercised");
  }
  std::mt19937_64 rng(testing::kSeed);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    const auto ux = random_vector(rng, n, -10, 10);
    const auto uy = random_vector(rng, n, -10, 10);
    const auto s = random_vector(rng, n, 0.01, 50);
    std::array<std::vector<double>, 5> a, b;
    for (auto& v : a) v.assign(n, 0.0);
    for (auto& v : b) v.assign(n, 0.0);
    kernels::scalar::recover_from_s({ux, uy, s}, {a[0], a[1], a[2], a[3], a[4]});
    kernels::avx2::recover_from_s({ux, uy, s}, {b[0], b[1], b[2], b[3], b[4]});
    for (int j = 0; j < 5; ++j) CHECK(bitwise_equal(a[j], b[j]));

    const auto uz0 = random_vector(rng, n, 0, 100);
    const auto em1 = random_vector(rng, n, 0, 30);
    std::vector<double> g1(n), g2(n);
    kernels::scalar::correction_weight(uz0, em1, g1);
    kernels::avx2::correction_weight(uz0, em1, g2);
    CHECK(bitwise_equal(g1, g2));

    std::vector<double> uz1(n), ga1(n), uz2(n), ga2(n);
    kernels::scalar::zero_density_longitudinal(ux, uy, uz1, ga1);
    kernels::avx2::zero_density_longitudinal(ux, uy, uz2, ga2);
    CHECK(bitwise_equal(uz1, uz2));
    CHECK(bitwise_equal(ga1, ga2));
  }
}

TEST_CASE("kernels: batch results match the scalar state formulas") {
  std::mt19937_64 rng(testing::kSeed + 1);
  const std::size_t n = 257;
  const auto ux = random_vector(rng, n, -3, 3);
  const auto uy = random_vector(rng, n, -3, 3);
  const auto s = random_vector(rng, n, 0.1, 10);
  std::vector<double> gamma(n), uz(n), bx(n), by(n), bz(n);
  kernels::recover_from_s({ux, uy, s}, {gamma, uz, bx, by, bz});
  for (std::size_t i = 0; i < n; ++i) {
    const KinematicState k = state_from_s({ux[i], uy[i]}, s[i]);
    CHECK(gamma[i] == doctest::Approx(k.gamma).epsilon(1e-14));
    CHECK(uz[i] == doctest::Approx(k.u_z).epsilon(1e-14).scale(k.gamma));
    CHECK(bz[i] == doctest::Approx(k.u_z / k.gamma).epsilon(1e-14).scale(1.0));
  }
  // g = (1+2u)(e^{2r}-1)/(1+2u+e^{2r}) evaluated directly for moderate r.
  const auto uz0 = random_vector(rng, n, 0, 10);
  const auto r = random_vector(rng, n, 0.01, 3);
  std::vector<double> em1(n), g(n);
  for (std::size_t i = 0; i < n; ++i) em1[i] = std::expm1(2 * r[i]);
  kernels::correction_weight(uz0, em1, g);
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = std::exp(2 * r[i]);
    const double ref = (1 + 2 * uz0[i]) * (e2 - 1) / (1 + 2 * uz0[i] + e2);
    CHECK(g[i] == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("kernels: isa override falls back and restores") {
  kernels::set_isa_override(kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  kernels::set_isa_override(kernels::Isa::avx2);
  CHECK(kernels::active_isa() ==
        (kernels::avx2_available() ? kernels::Isa::avx2 : kernels::Isa::scalar));
  kernels::set_isa_override(std::nullopt);
  CHECK(kernels::isa_name(kernels::Isa::scalar) == "scalar");
}

namespace {

// Explicit 4x4 boost matrix (lab components -> moving frame).
std::array<std::array<double, 4>, 4> boost_matrix(const Vec3& b) {
  const double b2 = b.norm2();
  const double g = 1.0 / std::sqrt(1.0 - b2);
  const double bv[3] = {b.x, b.y, b.z};
  std::array<std::array<double, 4>, 4> L{};
  L[0][0] = g;
  for (int i = 0; i < 3; ++i) {
    L[0][i + 1] = L[i + 1][0] = -g * bv[i];
    for (int j = 0; j < 3; ++j) {
      L[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (b2 > 0 ? (g - 1.0) * bv[i] * bv[j] / b2 : 0.0);
    }
  }
  return L;
}

}  // namespace

TEST_CASE("lorentz: boost matches the explicit matrix and inverts") {
  std::mt19937_64 rng(testing::kSeed + 2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> speed(0.0, 0.99);
  for (int i = 0; i < 200; ++i) {
    Vec3 dir{n(rng), n(rng), n(rng)};
    const Vec3 beta = dir / dir.norm() * speed(rng);
    const Boost B(beta);
    const Event v{n(rng), {n(rng), n(rng), n(rng)}};
    const auto L = boost_matrix(beta);
    const double in[4] = {v.x0, v.x.x, v.x.y, v.x.z};
    double out[4] = {0, 0, 0, 0};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[r] += L[r][c] * in[c];
    const Event w = B.apply(v);
    CHECK(w.x0 == doctest::Approx(out[0]).epsilon(1e-12).scale(10));
    CHECK(w.x.x == doctest::Approx(out[1]).epsilon(1e-12).scale(10));
    CHECK(w.x.y == doctest::Approx(out[2]).epsilon(1e-12).scale(10));
    CHECK(w.x.z == doctest::Approx(out[3]).epsilon(1e-12).scale(10));
    const Event back = B.inverse(w);
    CHECK((back.x - v.x).norm() < 1e-10);
    CHECK(std::abs(back.x0 - v.x0) < 1e-10);
    // Interval invariance.
    CHECK(w.x0 * w.x0 - w.x.norm2() ==
          doctest::Approx(v.x0 * v.x0 - v.x.norm2()).epsilon(1e-9).scale(10));
  }
}

TEST_CASE("lorentz: field transformation preserves both invariants and maps a plane wave") {
  std::mt19937_64 rng(testing::kSeed + 3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 e{n(rng), n(rng), n(rng)}, b{n(rng), n(rng), n(rng)};
    Vec3 dir{n(rng), n(rng), n(rng)};
    const Boost B(dir / dir.norm() * 0.8);
    const auto f = B.transform_fields(e, b);
    CHECK(f.e.norm2() - f.b.norm2() == doctest::Approx(e.norm2() - b.norm2()).scale(10));
    CHECK(f.e.dot(f.b) == doctest::Approx(e.dot(b)).scale(10));
  }
  // Plane wave along z seen from a frame moving along z: both fields scale by the Doppler
  // factor sqrt((1-beta)/(1+beta)).
  const double beta = 0.6;
  const auto f = Boost({0, 0, beta}).transform_fields({1, 0, 0}, {0, 1, 0});
  const double D = std::sqrt((1 - beta) / (1 + beta));
  CHECK(f.e.x == doctest::Approx(D).epsilon(1e-14));
  CHECK(f.b.y == doctest::Approx(D).epsilon(1e-14));
  CHECK(std::abs(f.e.z) < 1e-15);
}

TEST_CASE("lorentz: rotation_between is proper and maps from onto to, including antiparallel") {
  std::mt19937_64 rng(testing::kSeed + 4);
  std::normal_distribution<double> n(0.0, 1.0);
  auto check_rotation = [](const Vec3& a, const Vec3& b) {
    const Mat3 R = rotation_between(a, b);
    CHECK((R * a - b).norm() < 1e-12);
    const Mat3 RtR = R.transposed() * R;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(RtR(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);
    CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  };
  for (int i = 0; i < 100; ++i) {
    Vec3 a{n(rng), n(rng), n(rng)}, b{n(rng), n(rng), n(rng)};
    check_rotation(a / a.norm(), b / b.norm());
  }
  check_rotation({0, 0, 1}, {0, 0, 1});
  check_rotation({0, 0, -1}, {0, 0, 1});
  check_rotation({1, 0, 0}, {-1, 0, 0});
  const Vec3 c = Vec3{1, 2, 3} / Vec3{1, 2, 3}.norm();
  check_rotation(c, -c);
}

TEST_CASE("quadrature: polynomial exactness, oscillatory integrals and kinks") {
  const auto r1 = quad::integrate<double>([](double x) { return x * x * x * x; }, 0.0, 2.0);
  CHECK(r1.value == doctest::Approx(32.0 / 5.0).epsilon(1e-15));
  const auto r2 = quad::integrate<double>([](double x) { return std::cos(x); }, 0.0, 100.0);
  CHECK(r2.value == doctest::Approx(std::sin(100.0)).epsilon(1e-10));
  const double bp[1] = {0.3};
  const auto r3 = quad::integrate_piecewise<double>(
      [](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, bp);
  CHECK(r3.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
  CHECK(r3.intervals == 2);
  const auto r4 = quad::integrate<double>([](double x) { return x; }, 1.0, 0.0);
  CHECK(r4.value == doctest::Approx(-0.5));
  const auto r5 = quad::integrate<Vec2>([](double x) { return Vec2{std::cos(x), std::sin(x)}; },
                                        0.0, kPi);
  CHECK(std::abs(r5.value.x) < 1e-13);
  CHECK(r5.value.y == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("quadrature: non-convergence raises a numerical error") {
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.max_intervals = 3;
  CHECK_THROWS_AS(quad::integrate<double>([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0,
                                          opt),
                  NumericalError);
}

TEST_CASE("roots: bracketed Newton converges and rejects an unbracketed target") {
  auto f = [](double x) { return x * x * x + x; };
  auto df = [](double x) { return 3 * x * x + 1; };
  const auto r = solve_increasing(f, df, 10.0, 0.0, 5.0);
  CHECK(f(r.x) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(r.x == doctest::Approx(2.0).epsilon(1e-15));
  // A derivative that misleads Newton still converges via bisection.
  const auto r2 = solve_increasing(f, [](double) { return 1e-9; }, 10.0, 0.0, 5.0);
  CHECK(r2.x == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r2.newton_fallback);
  CHECK_THROWS_AS(solve_increasing(f, df, 1000.0, 0.0, 5.0), NumericalError);
  const double m = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1,
                                           1e-10);
  CHECK(m == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("chebyshev: fit, integral and derivative of a smooth function") {
  const int n = 24;
  const auto x = ChebSeries::nodes(0.0, 2.0, n);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = std::exp(x[i]);
  const ChebSeries f = ChebSeries::fit(0.0, 2.0, v);
  const ChebSeries F = f.integral(1.0);
  const ChebSeries d = f.derivative();
  for (double t : {0.0, 0.3, 1.1, 2.0}) {
    CHECK(f(t) == doctest::Approx(std::exp(t)).epsilon(1e-14));
    CHECK(F(t) == doctest::Approx(std::exp(t)).epsilon(1e-14));
    CHECK(d(t) == doctest::Approx(std::exp(t)).epsilon(1e-12));
  }
  CHECK(f.tail() < 1e-15 * f.max_coefficient() + 1e-16);
}
