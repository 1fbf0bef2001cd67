#pragma once

#include <functional>
#include <span>
#include <vector>

namespace planewave {

/// Chebyshev expansion f(x) = sum_j c_j T_j(t) on [a, b], t = (2x - a - b)/(b - a).
class ChebSeries {
 public:
  ChebSeries() = default;
  ChebSeries(double a, double b, std::vector<double> coeffs);

  /// First-kind Chebyshev nodes on [a, b] (n points, descending in t).
  static std::vector<double> nodes(double a, double b, int n);
  /// Interpolant through values sampled at nodes(a, b, values.size()).
  static ChebSeries fit(double a, double b, std::span<const double> values);

  double operator()(double x) const;
  /// Antiderivative F with F(a) = value_at_a.
  ChebSeries integral(double value_at_a) const;
  ChebSeries derivative() const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  std::span<const double> coefficients() const { return c_; }
  /// Largest of the last two coefficients; a proxy for the truncation error.
  double tail() const;
  double max_coefficient() const;

 private:
  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<double> c_;
};

}  // namespace planewave
