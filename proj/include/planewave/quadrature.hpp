#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "planewave/errors.hpp"
#include "planewave/vec.hpp"

namespace planewave::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

template <class T>
struct Result {
  T value{};
  double abs_error = 0.0;
  int intervals = 0;
  double abs_integral = 0.0;  // Kronrod estimate of the integral of |f|
};

// Gauss-Kronrod 10/21 abscissae and weights on [-1, 1] (positive half, descending).
struct Gk21Table {
  std::array<double, 11> xgk;
  std::array<double, 11> wgk;
  std::array<double, 5> wg;  // Gauss weights at xgk[1], xgk[3], ..., xgk[9]
};
const Gk21Table& gk21_table();

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Vec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }
inline double magnitude(const Vec3& v) {
  return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

/// One Kronrod 21-point panel with the embedded Gauss 10-point error estimate.
template <class T, class F>
Result<T> gk21(F&& f, double a, double b) {
  const auto& t = gk21_table();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * t.wgk[10];
  double abs_sum = magnitude(fc) * t.wgk[10];
  T gauss{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * t.xgk[j];
    const T lo = f(center - dx);
    const T hi = f(center + dx);
    const T sum = lo + hi;
    kronrod += sum * t.wgk[j];
    abs_sum += (magnitude(lo) + magnitude(hi)) * t.wgk[j];
    if (j % 2 == 1) gauss += sum * t.wg[j / 2];
  }
  Result<T> r;
  r.value = kronrod * half;
  r.abs_error = magnitude((kronrod - gauss) * half);
  r.abs_integral = abs_sum * std::abs(half);
  r.intervals = 1;
  return r;
}

/// Globally adaptive Gauss-Kronrod integration over consecutive panels [cuts_i, cuts_i+1].
/// The error target is max(abs_tol, rel_tol |I|), floored at the rounding level of the
/// integral of |f|. Throws NumericalError when the target is not reached.
template <class T, class F>
Result<T> integrate_cuts(F&& f, std::span<const double> cuts, const Options& opt = {}) {
  struct Panel {
    double a, b;
    Result<T> r;
  };
  auto cmp = [](const Panel& l, const Panel& r) { return l.r.abs_error < r.r.abs_error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  T total{};
  double error = 0.0;
  double abs_total = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    Panel p{cuts[i], cuts[i + 1], gk21<T>(f, cuts[i], cuts[i + 1])};
    total += p.r.value;
    error += p.r.abs_error;
    abs_total += p.r.abs_integral;
    heap.push(p);
    ++count;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  auto target = [&] {
    return std::max({opt.abs_tol, opt.rel_tol * magnitude(total), 50.0 * eps * abs_total});
  };
  while (!heap.empty() && error > target()) {
    if (count >= opt.max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << cuts.front() << ", " << cuts.back()
          << "] did not converge: error " << error << " > target " << target() << " after "
          << count << " panels";
      throw NumericalError("quadrature", msg.str());
    }
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further in double
    heap.pop();
    Panel left{worst.a, mid, gk21<T>(f, worst.a, mid)};
    Panel right{mid, worst.b, gk21<T>(f, mid, worst.b)};
    total += (left.r.value + right.r.value) - worst.r.value;
    error += left.r.abs_error + right.r.abs_error - worst.r.abs_error;
    abs_total += left.r.abs_integral + right.r.abs_integral - worst.r.abs_integral;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed the drift from incremental updates.
  Result<T> out;
  out.intervals = count;
  while (!heap.empty()) {
    out.value += heap.top().r.value;
    out.abs_error += heap.top().r.abs_error;
    out.abs_integral += heap.top().r.abs_integral;
    heap.pop();
  }
  return out;
}

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Options& opt = {}) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate<T>(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  const double cuts[2] = {a, b};
  return integrate_cuts<T>(f, cuts, opt);
}

/// Integrates over [a, b], with initial panels split at every breakpoint inside the interval.
template <class T, class F>
Result<T> integrate_piecewise(F&& f, double a, double b, std::span<const double> breakpoints,
                              const Options& opt = {}) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_piecewise<T>(f, b, a, breakpoints, opt);
    r.value = -r.value;
    return r;
  }
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);
  return integrate_cuts<T>(f, cuts, opt);
}

}  // namespace planewave::quad
