#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "planewave/errors.hpp"

namespace planewave {

struct RootResult {
  double x = 0.0;
  int iterations = 0;
  bool newton_fallback = false;
};

/// Solves f(x) = target for f strictly increasing on [lo, hi] with f(lo) <= target <= f(hi).
/// Newton steps use df; any step leaving the current bracket is replaced by bisection.
/// Iterates until the bracket or the step is at the level of double rounding.
template <class F, class DF>
RootResult solve_increasing(F&& f, DF&& df, double target, double lo, double hi,
                            int max_iter = 200) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream msg;
    msg << "target " << target << " not bracketed by [" << lo << ", " << hi << "]";
    throw NumericalError("roots", msg.str());
  }
  if (flo == 0.0) return {lo, 0, false};
  if (fhi == 0.0) return {hi, 0, false};
  RootResult out;
  double x = lo - flo * (hi - lo) / (fhi - flo);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const double fx = f(x) - target;
    if (fx == 0.0) {
      out.x = x;
      return out;
    }
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = df(x);
    double next = slope > 0.0 ? x - fx / slope : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
      out.newton_fallback = true;
    }
    const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * scale ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
      out.x = next;
      return out;
    }
    x = next;
  }
  throw NumericalError("roots", "bracketed Newton did not converge");
}

/// Golden-section search for a maximum of a unimodal f on [a, b] down to width tol.
template <class F>
double golden_section_maximize(F&& f, double a, double b, double tol) {
  const double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace planewave
