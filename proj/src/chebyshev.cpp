#include "planewave/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "planewave/constants.hpp"

namespace planewave {

ChebSeries::ChebSeries(double a, double b, std::vector<double> coeffs)
    : a_(a), b_(b), c_(std::move(coeffs)) {}

std::vector<double> ChebSeries::nodes(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = 0; k < n; ++k) {
    x[static_cast<std::size_t>(k)] = mid + half * std::cos(kPi * (k + 0.5) / n);
  }
  return x;
}

ChebSeries ChebSeries::fit(double a, double b, std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<double> c(values.size(), 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      acc += values[static_cast<std::size_t>(k)] * std::cos(kPi * j * (k + 0.5) / n);
    }
    c[static_cast<std::size_t>(j)] = 2.0 * acc / n;
  }
  c[0] *= 0.5;
  return {a, b, std::move(c)};
}

double ChebSeries::operator()(double x) const {
  const double t = (2.0 * x - a_ - b_) / (b_ - a_);
  const double t2 = 2.0 * t;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c_.size(); j-- > 1;) {
    const double b0 = c_[j] + t2 * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c_.empty() ? 0.0 : c_[0] + t * b1 - b2;
}

ChebSeries ChebSeries::integral(double value_at_a) const {
  const std::size_t n = c_.size();
  std::vector<double> C(n + 1, 0.0);
  auto coeff = [&](std::size_t j) { return j < n ? c_[j] : 0.0; };
  const double scale = 0.5 * (b_ - a_);
  if (n > 0) C[1] = (coeff(0) - 0.5 * coeff(2)) * scale;
  for (std::size_t j = 2; j <= n; ++j) {
    C[j] = (coeff(j - 1) - coeff(j + 1)) / (2.0 * static_cast<double>(j)) * scale;
  }
  // F(-1) = sum_j C_j (-1)^j
  double at_minus_one = 0.0;
  for (std::size_t j = 1; j <= n; ++j) at_minus_one += (j % 2 ? -C[j] : C[j]);
  C[0] = value_at_a - at_minus_one;
  return {a_, b_, std::move(C)};
}

ChebSeries ChebSeries::derivative() const {
  const std::size_t n = c_.size();
  if (n < 2) return {a_, b_, {0.0}};
  std::vector<double> d(n, 0.0);
  // d_{j-1} = d_{j+1} + 2 j c_j, with d_0 halved at the end.
  for (std::size_t j = n - 1; j >= 1; --j) {
    d[j - 1] = (j + 1 < n ? d[j + 1] : 0.0) + 2.0 * static_cast<double>(j) * c_[j];
  }
  d[0] *= 0.5;
  d.pop_back();
  const double scale = 2.0 / (b_ - a_);
  for (double& v : d) v *= scale;
  return {a_, b_, std::move(d)};
}

double ChebSeries::tail() const {
  const std::size_t n = c_.size();
  if (n < 2) return 0.0;
  return std::max(std::abs(c_[n - 1]), std::abs(c_[n - 2]));
}

double ChebSeries::max_coefficient() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace planewave
