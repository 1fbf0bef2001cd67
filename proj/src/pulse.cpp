#include "planewave/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "planewave/constants.hpp"
#include "planewave/errors.hpp"
#include "planewave/roots.hpp"

namespace planewave {

namespace {

// exp(-x^2) = 1e-12 at x = sqrt(12 ln 10).
const double kGaussianCut = std::sqrt(12.0 * std::log(10.0));

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("envelope: ") + what + " must be positive");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("envelope: ") + what + " must be finite");
}

}  // namespace

Envelope Envelope::gaussian(double peak, double sigma, std::optional<double> center) {
  require_finite(peak, "peak");
  require_positive(sigma, "sigma");
  const double half_width = kGaussianCut * sigma;
  Envelope env;
  env.kind_ = EnvelopeKind::gaussian;
  env.peak_ = peak;
  env.sigma_ = sigma;
  env.center_ = std::max(center.value_or(half_width), half_width);
  env.begin_ = env.center_ - half_width;
  env.end_ = env.center_ + half_width;
  env.breakpoints_ = {env.begin_, env.end_};
  return env;
}

Envelope Envelope::cutoff_polynomial(double peak, double length) {
  require_finite(peak, "peak");
  require_positive(length, "length");
  Envelope env;
  env.kind_ = EnvelopeKind::cutoff_polynomial;
  env.peak_ = peak;
  env.begin_ = 0.0;
  env.end_ = length;
  env.center_ = 0.5 * length;
  env.breakpoints_ = {0.0, length};
  return env;
}

Envelope Envelope::constant_window(double peak, double length) {
  require_finite(peak, "peak");
  require_positive(length, "length");
  Envelope env;
  env.kind_ = EnvelopeKind::constant_window;
  env.peak_ = peak;
  env.begin_ = 0.0;
  env.end_ = length;
  env.breakpoints_ = {0.0, length};
  return env;
}

Envelope Envelope::tabulated(std::vector<double> xi, std::vector<double> eps) {
  if (xi.size() != eps.size() || xi.size() < 2) {
    throw DomainError("envelope: tabulated envelope needs at least two (xi, eps) rows");
  }
  for (std::size_t i = 0; i < xi.size(); ++i) {
    require_finite(xi[i], "tabulated xi");
    require_finite(eps[i], "tabulated epsilon");
    if (i > 0 && !(xi[i] > xi[i - 1])) {
      throw DomainError("envelope: tabulated xi must be strictly increasing");
    }
  }
  if (!(xi.back() > 0.0)) throw DomainError("envelope: tabulated support lies in xi <= 0");
  Envelope env;
  env.kind_ = EnvelopeKind::tabulated;
  env.begin_ = std::max(0.0, xi.front());
  env.end_ = xi.back();
  env.table_xi_ = std::move(xi);
  env.table_eps_ = std::move(eps);
  if (env.table_xi_.front() < 0.0) env.breakpoints_.push_back(0.0);
  for (double x : env.table_xi_) {
    if (x >= 0.0) env.breakpoints_.push_back(x);
  }
  for (std::size_t i = 0; i < env.table_xi_.size(); ++i) {
    if (env.table_xi_[i] > 0.0) env.peak_ = std::max(env.peak_, std::abs(env.table_eps_[i]));
  }
  return env;
}

Envelope Envelope::read_tabulated(std::istream& in) {
  std::vector<double> xi, eps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    double x = 0.0, e = 0.0;
    if (!(row >> x >> e)) {
      throw DomainError("envelope table line " + std::to_string(lineno) +
                        ": expected two numbers 'xi epsilon'");
    }
    std::string extra;
    if (row >> extra) {
      throw DomainError("envelope table line " + std::to_string(lineno) +
                        ": unexpected trailing text '" + extra + "'");
    }
    xi.push_back(x);
    eps.push_back(e);
  }
  return tabulated(std::move(xi), std::move(eps));
}

Envelope Envelope::load_tabulated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("envelope: cannot open " + path.string());
  return read_tabulated(in);
}

double Envelope::value(double xi) const {
  if (!(xi > 0.0) || xi < begin_ || xi > end_) return 0.0;
  switch (kind_) {
    case EnvelopeKind::gaussian: {
      const double x = (xi - center_) / sigma_;
      return peak_ * std::exp(-x * x);
    }
    case EnvelopeKind::cutoff_polynomial: {
      const double t = xi / end_;
      const double u = 1.0 - t;
      return 16.0 * peak_ * t * t * u * u;
    }
    case EnvelopeKind::constant_window:
      return peak_;
    case EnvelopeKind::tabulated: {
      auto it = std::upper_bound(table_xi_.begin(), table_xi_.end(), xi);
      if (it == table_xi_.end()) return table_eps_.back();
      const auto i = static_cast<std::size_t>(it - table_xi_.begin());
      const double x0 = table_xi_[i - 1], x1 = table_xi_[i];
      const double w = (xi - x0) / (x1 - x0);
      return table_eps_[i - 1] + w * (table_eps_[i] - table_eps_[i - 1]);
    }
  }
  return 0.0;
}

double Envelope::derivative(double xi) const {
  if (xi < 0.0 || xi < begin_ || xi >= end_) return 0.0;
  switch (kind_) {
    case EnvelopeKind::gaussian: {
      const double x = (xi - center_) / sigma_;
      return -2.0 * x / sigma_ * peak_ * std::exp(-x * x);
    }
    case EnvelopeKind::cutoff_polynomial: {
      const double t = xi / end_;
      const double u = 1.0 - t;
      return 32.0 * peak_ * t * u * (u - t) / end_;
    }
    case EnvelopeKind::constant_window:
      return 0.0;
    case EnvelopeKind::tabulated: {
      auto it = std::upper_bound(table_xi_.begin(), table_xi_.end(), xi);
      if (it == table_xi_.begin() || it == table_xi_.end()) return 0.0;
      const auto i = static_cast<std::size_t>(it - table_xi_.begin());
      return (table_eps_[i] - table_eps_[i - 1]) / (table_xi_[i] - table_xi_[i - 1]);
    }
  }
  return 0.0;
}

Envelope Envelope::rescaled(double new_peak) const {
  Envelope env = *this;
  if (kind_ == EnvelopeKind::tabulated) {
    const double f = peak_ != 0.0 ? new_peak / peak_ : 0.0;
    for (double& v : env.table_eps_) v *= f;
  }
  env.peak_ = new_peak;
  return env;
}

// ---------------------------------------------------------------------------

Pulse::Pulse(Envelope envelope, double wavelength, Polarization polarization,
             double quadrature_tol)
    : envelope_(std::move(envelope)),
      wavelength_(wavelength),
      k_(2.0 * kPi / wavelength),
      polarization_(polarization) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw DomainError("pulse: wavelength must be positive");
  }
  quad_opt_.rel_tol = quadrature_tol;
  quad_opt_.abs_tol = quadrature_tol * 1e-3 * std::abs(envelope_.peak()) / k_;

  // Cache a_perp on knots: every breakpoint plus a lambda/8 lattice over the support.
  const double end = envelope_.support_end();
  knots_.push_back(0.0);
  const double spacing = wavelength_ / 8.0;
  const auto n = static_cast<long>(std::ceil(end / spacing));
  for (long i = 1; i < n; ++i) knots_.push_back(static_cast<double>(i) * spacing);
  for (double b : envelope_.breakpoints()) knots_.push_back(b);
  knots_.push_back(end);
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end(),
                           [&](double a, double b) { return b - a < 1e-9 * spacing; }),
               knots_.end());
  knots_.back() = std::max(knots_.back(), end);

  knot_a_.resize(knots_.size());
  auto field = [this](double xi) { return e_perp(xi); };
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    auto r = quad::integrate<Vec2>(field, knots_[i - 1], knots_[i], quad_opt_);
    knot_a_[i] = knot_a_[i - 1] - r.value;
  }
}

double Pulse::field_for_amplitude(double w, double wavelength) {
  const double k = 2.0 * kPi / wavelength;
  return w * k * kCgs.electron_rest_energy() / kCgs.e;
}

Vec2 Pulse::e_o(double xi) const {
  const double ph = k_ * xi;
  if (polarization_ == Polarization::linear) return {std::cos(ph), 0.0};
  return {std::cos(ph), std::sin(ph)};
}

Vec2 Pulse::e_p(double xi) const {
  const double ph = k_ * xi;
  if (polarization_ == Polarization::linear) return {std::sin(ph), 0.0};
  return {std::sin(ph), -std::cos(ph)};
}

Vec2 Pulse::e_perp(double xi) const {
  const double eps = envelope_.value(xi);
  if (eps == 0.0) return {};
  return eps * e_o(xi);
}

Vec2 Pulse::a_perp(double xi) const {
  if (!(xi > 0.0)) return {};
  if (xi >= knots_.back()) return knot_a_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), xi);
  const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (xi == knots_[i]) return knot_a_[i];
  auto field = [this](double x) { return e_perp(x); };
  return knot_a_[i] - quad::integrate<Vec2>(field, knots_[i], xi, quad_opt_).value;
}

Vec2 Pulse::a_perp_envelope(double xi) const {
  return -(envelope_.value(xi) / k_) * e_p(xi);
}

double Pulse::dimensionless_amplitude(double xi) const {
  return kCgs.e * envelope_.value(xi) / (k_ * kCgs.electron_rest_energy());
}

SlownessReport Pulse::slowness() const {
  const double begin = envelope_.support_begin();
  const double end = envelope_.support_end();
  if (!(end > begin)) throw DomainError("slowness: envelope has empty support");
  const auto n = std::max<long>(2, static_cast<long>(std::ceil((end - begin) / (wavelength_ / 64.0))));
  const double h = (end - begin) / static_cast<double>(n);
  std::vector<double> xs(static_cast<std::size_t>(n + 1));
  std::vector<double> vs(xs.size());
  for (long j = 0; j <= n; ++j) {
    xs[static_cast<std::size_t>(j)] = j == n ? end : begin + static_cast<double>(j) * h;
    vs[static_cast<std::size_t>(j)] = envelope_.value(xs[static_cast<std::size_t>(j)]);
  }

  SlownessReport rep;
  for (long j = 1; j < n; ++j) {
    const double eps = vs[static_cast<std::size_t>(j)];
    if (eps == 0.0) continue;
    const double d = wavelength_ * std::abs(envelope_.derivative(xs[static_cast<std::size_t>(j)]) / eps);
    rep.delta = std::max(rep.delta, d);
  }

  rep.xi0 = begin;
  for (long j = 0; j <= n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (!(vs[u] > 0.0)) continue;
    if (j == n) {
      rep.xi0 = end;
      break;
    }
    if (vs[u + 1] > vs[u]) continue;
    // Equal neighbours mean a plateau only if a third sample agrees; otherwise the peak sits
    // between two nodes and is refined like any other.
    const bool plateau = vs[u + 1] == vs[u] && (j + 2 > n || vs[u + 2] == vs[u]);
    if (plateau || j == 0 || !(vs[u - 1] < vs[u])) {
      rep.xi0 = xs[u];
    } else {
      auto f = [this](double x) { return envelope_.value(x); };
      rep.xi0 = golden_section_maximize(f, xs[u - 1], xs[u + 1], wavelength_ * 1e-6);
    }
    break;
  }
  return rep;
}

}  // namespace planewave
