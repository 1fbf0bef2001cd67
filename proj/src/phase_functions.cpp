#include "planewave/phase_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "planewave/csv.hpp"
#include "planewave/errors.hpp"
#include "planewave/roots.hpp"

namespace planewave {

namespace {

struct PanelSamples {
  std::vector<double> ux, uy, uz;
};

PanelSamples sample_panel(const Species& species, const TransverseProfile& profile,
                          const std::vector<double>& nodes) {
  PanelSamples s;
  for (double x : nodes) {
    const Vec2 u = transverse_momentum(species, profile.a_perp(x));
    s.ux.push_back(u.x);
    s.uy.push_back(u.y);
    s.uz.push_back(0.5 * u.norm2());
  }
  return s;
}

bool resolved(const ChebSeries& c, double scale, double tol) {
  return c.tail() <= tol * std::max(scale, c.max_coefficient()) + 1e-300;
}

}  // namespace

PhaseFunctions PhaseFunctions::build(const Species& species, const TransverseProfile& profile,
                                     double xi_max, const PhaseOptions& opt) {
  const double lambda = profile.wavelength();
  const double end = profile.support_end();
  if (!std::isfinite(xi_max) || xi_max < end) {
    std::ostringstream msg;
    msg << "phase_functions: xi_max = " << xi_max << " must reach the support end " << end;
    throw DomainError(msg.str());
  }
  PhaseFunctions pf;
  pf.species_ = species;
  pf.wavelength_ = lambda;
  pf.tolerance_ = opt.tolerance;

  // Initial lattice at lambda/panels_per_wavelength, merged with the profile breakpoints.
  const double spacing = lambda / opt.panels_per_wavelength;
  for (double b : profile.breakpoints()) {
    if (b > 0.0 && b < xi_max) pf.breakpoints_.push_back(b);
  }
  std::sort(pf.breakpoints_.begin(), pf.breakpoints_.end());
  std::vector<double> merged{0.0};
  merged.insert(merged.end(), pf.breakpoints_.begin(), pf.breakpoints_.end());
  merged.push_back(xi_max);
  const auto n = static_cast<long>(std::ceil(xi_max / spacing));
  for (long i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) * spacing;
    const auto it = std::lower_bound(pf.breakpoints_.begin(), pf.breakpoints_.end(), x);
    bool near_fixed = std::abs(x - xi_max) < 1e-6 * spacing;
    if (it != pf.breakpoints_.end()) near_fixed |= *it - x < 1e-6 * spacing;
    if (it != pf.breakpoints_.begin()) near_fixed |= x - *(it - 1) < 1e-6 * spacing;
    if (!near_fixed) merged.push_back(x);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  if (merged.size() < 2) merged.push_back(spacing);

  // Scale of |u| for the relative panel-resolution test.
  double u_scale = 0.0;
  for (double x : merged) {
    u_scale = std::max(u_scale, transverse_momentum(species, profile.a_perp(x)).norm());
  }
  const double uz_scale = 0.5 * u_scale * u_scale;

  Vec2 y_perp{};
  double y3 = 0.0, v3 = 0.0;
  pf.knots_.push_back(0.0);
  pf.knot_xi_.push_back(0.0);

  // Work list of [a, b] panels, refined by bisection where the expansion is under-resolved.
  struct Pending {
    double a, b;
    int depth;
  };
  std::vector<Pending> work;
  for (std::size_t i = merged.size() - 1; i >= 1; --i) work.push_back({merged[i - 1], merged[i], 0});

  while (!work.empty()) {
    const Pending p = work.back();
    work.pop_back();
    const auto nodes = ChebSeries::nodes(p.a, p.b, opt.nodes);
    const PanelSamples s = sample_panel(species, profile, nodes);
    ChebSeries ux = ChebSeries::fit(p.a, p.b, s.ux);
    ChebSeries uy = ChebSeries::fit(p.a, p.b, s.uy);
    ChebSeries uz = ChebSeries::fit(p.a, p.b, s.uz);
    const bool ok = resolved(ux, u_scale, opt.tolerance) && resolved(uy, u_scale, opt.tolerance) &&
                    resolved(uz, uz_scale, opt.tolerance);
    if (!ok && p.depth < opt.max_refinement) {
      const double mid = 0.5 * (p.a + p.b);
      work.push_back({mid, p.b, p.depth + 1});
      work.push_back({p.a, mid, p.depth + 1});
      continue;
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "panel [" << p.a << ", " << p.b << "] unresolved after " << p.depth
          << " refinements";
      throw NumericalError("phase_functions", msg.str());
    }
    Panel panel;
    panel.yx = ux.integral(y_perp.x);
    panel.yy = uy.integral(y_perp.y);
    panel.y3 = uz.integral(y3);
    panel.v3 = panel.y3.integral(v3);
    panel.ux = std::move(ux);
    panel.uy = std::move(uy);
    panel.uz = std::move(uz);
    y_perp = {panel.yx(p.b), panel.yy(p.b)};
    y3 = panel.y3(p.b);
    v3 = panel.v3(p.b);
    pf.panels_.push_back(std::move(panel));
    pf.knots_.push_back(p.b);
    pf.knot_xi_.push_back(p.b + y3);
  }

  const double last = pf.knots_.back();
  pf.end_u_perp_ = transverse_momentum(species, profile.a_perp(last));
  pf.end_uz_ = 0.5 * pf.end_u_perp_.norm2();
  pf.end_y_perp_ = y_perp;
  pf.end_y3_ = y3;
  pf.end_v3_ = v3;
  return pf;
}

std::size_t PhaseFunctions::panel_index(double xi) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), xi);
  const auto i = static_cast<std::size_t>(it - knots_.begin());
  return std::min(i - 1, panels_.size() - 1);
}

Vec2 PhaseFunctions::u_perp(double xi) const {
  if (!(xi > 0.0)) return {};
  if (xi >= range_end()) return end_u_perp_;
  const Panel& p = panels_[panel_index(xi)];
  return {p.ux(xi), p.uy(xi)};
}

double PhaseFunctions::u_z(double xi) const {
  if (!(xi > 0.0)) return 0.0;
  if (xi >= range_end()) return end_uz_;
  return panels_[panel_index(xi)].uz(xi);
}

KinematicState PhaseFunctions::state(double xi) const {
  KinematicState st;
  st.u_perp = u_perp(xi);
  st.u_z = 0.5 * st.u_perp.norm2();
  st.gamma = 1.0 + st.u_z;
  st.s = 1.0;
  return st;
}

Vec2 PhaseFunctions::y_perp(double xi) const {
  if (!(xi > 0.0)) return {};
  if (xi >= range_end()) return end_y_perp_ + (xi - range_end()) * end_u_perp_;
  const Panel& p = panels_[panel_index(xi)];
  return {p.yx(xi), p.yy(xi)};
}

double PhaseFunctions::y3(double xi) const {
  if (!(xi > 0.0)) return 0.0;
  if (xi >= range_end()) return end_y3_ + (xi - range_end()) * end_uz_;
  return panels_[panel_index(xi)].y3(xi);
}

double PhaseFunctions::v3(double xi) const {
  if (!(xi > 0.0)) return 0.0;
  if (xi >= range_end()) {
    const double d = xi - range_end();
    return end_v3_ + end_y3_ * d + 0.5 * end_uz_ * d * d;
  }
  return panels_[panel_index(xi)].v3(xi);
}

double PhaseFunctions::xi_inverse(double eta) const {
  if (!std::isfinite(eta)) throw DomainError("xi_inverse: non-finite argument");
  if (!(eta > 0.0)) return eta;
  const double end_xi = knot_xi_.back();
  if (eta >= end_xi) return range_end() + (eta - end_xi) / (1.0 + end_uz_);
  const auto it = std::upper_bound(knot_xi_.begin(), knot_xi_.end(), eta);
  const auto i = static_cast<std::size_t>(it - knot_xi_.begin()) - 1;
  const Panel& p = panels_[i];
  auto f = [&](double x) { return x + p.y3(x); };
  auto df = [&](double x) { return 1.0 + p.uz(x); };
  const double lo = knots_[i];
  const double hi = knots_[i + 1];
  // Chebyshev rounding can leave f(lo) a hair above eta; clamp to the bracket.
  if (f(lo) >= eta) return lo;
  if (f(hi) <= eta) return hi;
  return solve_increasing(f, df, eta, lo, hi).x;
}

void PhaseFunctions::write_csv(std::ostream& out, std::span<const double> xis) const {
  CsvWriter csv(out, {"xi", "Y3", "Xi", "V3"});
  for (double x : xis) csv.row({x, y3(x), xi_of(x), v3(x)});
}

}  // namespace planewave
