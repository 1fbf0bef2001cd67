#include "planewave/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "planewave/errors.hpp"

namespace planewave {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string join_message(const std::vector<ConfigIssue>& issues) {
  std::ostringstream msg;
  msg << issues.size() << " configuration error(s):";
  for (const auto& i : issues) {
    msg << "\n  ";
    if (i.line > 0) msg << "line " << i.line << ": ";
    msg << i.message;
  }
  return msg.str();
}

class Parser {
 public:
  explicit Parser(RunConfig& cfg) : cfg_(cfg) { register_keys(); }

  void parse(std::string_view text) {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      const auto comment = line.find_first_of("#;");
      if (comment != std::string_view::npos) line = line.substr(0, comment);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          error(line_no, "malformed section header");
          section.clear();
          continue;
        }
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!handlers_.count(section)) {
          error(line_no, "unknown section [" + section + "]");
        } else if (!seen_sections_.insert(section).second) {
          error(line_no, "duplicate section [" + section + "]");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        error(line_no, "expected key = value");
        continue;
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string_view value = trim(line.substr(eq + 1));
      if (section.empty()) {
        error(line_no, "key '" + key + "' outside of any section");
        continue;
      }
      auto sec = handlers_.find(section);
      if (sec == handlers_.end()) continue;  // already reported
      auto h = sec->second.find(key);
      if (h == sec->second.end()) {
        error(line_no, "unknown key '" + key + "' in [" + section + "]");
        continue;
      }
      const std::string full = section + "." + key;
      if (lines_.count(full)) {
        error(line_no, "duplicate key '" + full + "'");
        continue;
      }
      lines_[full] = line_no;
      h->second(value, line_no);
    }
    validate();
  }

  std::vector<ConfigIssue> issues;

 private:
  using Handler = std::function<void(std::string_view, int)>;

  void error(int line, std::string msg) { issues.push_back({line, std::move(msg)}); }
  int line_of(const std::string& key) const {
    auto it = lines_.find(key);
    return it == lines_.end() ? 0 : it->second;
  }

  Handler number(const char* key, double& out) {
    return [this, key, &out](std::string_view v, int line) {
      if (auto x = to_number(v)) {
        out = *x;
      } else {
        error(line, std::string(key) + ": expected a number, got '" + std::string(v) + "'");
      }
    };
  }
  Handler optional_number(const char* key, std::optional<double>& out) {
    return [this, key, &out](std::string_view v, int line) {
      if (auto x = to_number(v)) {
        out = *x;
      } else {
        error(line, std::string(key) + ": expected a number, got '" + std::string(v) + "'");
      }
    };
  }
  Handler integer(const char* key, int& out) {
    return [this, key, &out](std::string_view v, int line) {
      const auto x = to_number(v);
      if (x && *x == static_cast<double>(static_cast<int>(*x))) {
        out = static_cast<int>(*x);
      } else {
        error(line, std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
      }
    };
  }
  Handler list(const char* key, std::vector<double>& out) {
    return [this, key, &out](std::string_view v, int line) {
      out.clear();
      std::size_t p = 0;
      while (p <= v.size()) {
        const auto c = v.find(',', p);
        const auto item = v.substr(p, c == std::string_view::npos ? v.npos : c - p);
        if (auto x = to_number(item)) {
          out.push_back(*x);
        } else {
          error(line, std::string(key) + ": bad list entry '" + std::string(trim(item)) + "'");
          return;
        }
        if (c == std::string_view::npos) break;
        p = c + 1;
      }
    };
  }
  Handler vec3(const char* key, Vec3& out) {
    return [this, key, &out](std::string_view v, int line) {
      std::vector<double> xs;
      const std::size_t before = issues.size();
      list(key, xs)(v, line);
      if (issues.size() != before) return;
      if (xs.size() != 3) {
        error(line, std::string(key) + ": expected three comma-separated numbers");
        return;
      }
      out = {xs[0], xs[1], xs[2]};
    };
  }

  void register_keys() {
    auto& p = handlers_["pulse"];
    auto& pc = cfg_.pulse;
    p["kind"] = [this](std::string_view v, int line) {
      if (v == "gaussian") {
        cfg_.pulse.kind = EnvelopeKind::gaussian;
      } else if (v == "polynomial") {
        cfg_.pulse.kind = EnvelopeKind::cutoff_polynomial;
      } else if (v == "window") {
        cfg_.pulse.kind = EnvelopeKind::constant_window;
      } else if (v == "tabulated") {
        cfg_.pulse.kind = EnvelopeKind::tabulated;
      } else {
        error(line, "pulse.kind: expected gaussian, polynomial, window or tabulated");
      }
    };
    p["polarization"] = [this](std::string_view v, int line) {
      if (v == "linear") {
        cfg_.pulse.polarization = Polarization::linear;
      } else if (v == "circular") {
        cfg_.pulse.polarization = Polarization::circular;
      } else {
        error(line, "pulse.polarization: expected linear or circular");
      }
    };
    p["wavelength"] = number("pulse.wavelength", pc.wavelength);
    p["amplitude"] = optional_number("pulse.amplitude", pc.amplitude);
    p["peak_field"] = optional_number("pulse.peak_field", pc.peak_field);
    p["sigma"] = optional_number("pulse.sigma", pc.sigma);
    p["center"] = optional_number("pulse.center", pc.center);
    p["length"] = optional_number("pulse.length", pc.length);
    p["file"] = [this](std::string_view v, int) { cfg_.pulse.file = std::string(v); };

    auto& s = handlers_["species"];
    s["name"] = [this](std::string_view v, int) { cfg_.species.name = std::string(v); };
    s["mass"] = optional_number("species.mass", cfg_.species.mass);
    s["charge"] = optional_number("species.charge", cfg_.species.charge);

    auto& pl = handlers_["plasma"];
    pl["n0"] = number("plasma.n0", cfg_.plasma.n0);
    pl["radius"] = optional_number("plasma.radius", cfg_.plasma.radius);
    pl["length"] = optional_number("plasma.length", cfg_.plasma.length);

    auto& r = handlers_["run"];
    auto& rc = cfg_.run;
    r["tolerance"] = number("run.tolerance", rc.tolerance);
    r["threshold_T"] = number("run.threshold_T", rc.threshold_T);
    r["threshold_cond2"] = number("run.threshold_cond2", rc.threshold_cond2);
    r["xi_max"] = optional_number("run.xi_max", rc.xi_max);
    r["samples"] = integer("run.samples", rc.samples);
    r["times"] = list("run.times", rc.times);
    r["Z_min"] = number("run.Z_min", rc.Z_min);
    r["Z_max"] = number("run.Z_max", rc.Z_max);
    r["Z_samples"] = integer("run.Z_samples", rc.Z_samples);
    r["Z"] = number("run.Z", rc.Z);
    r["direction"] = vec3("run.direction", rc.direction);
    r["beta"] = vec3("run.beta", rc.beta);
    r["position"] = vec3("run.position", rc.position);
    r["steps_per_wavelength"] = integer("run.steps_per_wavelength", rc.steps_per_wavelength);
  }

  void require_positive(const std::string& key, std::optional<double> v) {
    if (v && !(*v > 0.0)) error(line_of(key), key + " must be > 0");
  }

  void validate() {
    const auto& p = cfg_.pulse;
    if (!lines_.count("pulse.wavelength")) {
      error(0, "missing required key pulse.wavelength");
    } else if (!(p.wavelength > 0.0)) {
      error(line_of("pulse.wavelength"), "pulse.wavelength must be > 0");
    }
    if (p.amplitude && p.peak_field) {
      error(line_of("pulse.peak_field"), "give either pulse.amplitude or pulse.peak_field, not both");
    }
    if (p.kind != EnvelopeKind::tabulated && !p.amplitude && !p.peak_field) {
      error(0, "missing required key pulse.amplitude (or pulse.peak_field)");
    }
    if (p.amplitude && !(*p.amplitude >= 0.0)) {
      error(line_of("pulse.amplitude"), "pulse.amplitude must be >= 0");
    }
    if (p.peak_field && !(*p.peak_field >= 0.0)) {
      error(line_of("pulse.peak_field"), "pulse.peak_field must be >= 0");
    }
    switch (p.kind) {
      case EnvelopeKind::gaussian:
        if (!p.sigma) error(0, "missing required key pulse.sigma for a gaussian pulse");
        require_positive("pulse.sigma", p.sigma);
        if (p.center && !(*p.center >= 0.0)) {
          error(line_of("pulse.center"), "pulse.center must be >= 0");
        }
        break;
      case EnvelopeKind::cutoff_polynomial:
      case EnvelopeKind::constant_window:
        if (!p.length) error(0, "missing required key pulse.length");
        require_positive("pulse.length", p.length);
        break;
      case EnvelopeKind::tabulated:
        if (p.file.empty()) error(0, "missing required key pulse.file for a tabulated pulse");
        break;
    }

    const auto& s = cfg_.species;
    if (s.mass || s.charge) {
      if (!(s.mass && s.charge)) {
        error(line_of(s.mass ? "species.mass" : "species.charge"),
              "species.mass and species.charge must be given together");
      }
      require_positive("species.mass", s.mass);
      if (s.charge && *s.charge == 0.0) error(line_of("species.charge"), "species.charge must be nonzero");
    } else if (s.name != "electron" && s.name != "positron" && s.name != "proton") {
      error(line_of("species.name"),
            "species.name: expected electron, positron or proton (or give mass and charge)");
    }

    if (!(cfg_.plasma.n0 >= 0.0)) error(line_of("plasma.n0"), "plasma.n0 must be >= 0");
    require_positive("plasma.radius", cfg_.plasma.radius);
    require_positive("plasma.length", cfg_.plasma.length);

    const auto& r = cfg_.run;
    if (!(r.tolerance > 0.0 && r.tolerance < 1.0)) {
      error(line_of("run.tolerance"), "run.tolerance must be in (0, 1)");
    }
    if (!(r.threshold_T > 0.0)) error(line_of("run.threshold_T"), "run.threshold_T must be > 0");
    if (!(r.threshold_cond2 > 0.0)) {
      error(line_of("run.threshold_cond2"), "run.threshold_cond2 must be > 0");
    }
    require_positive("run.xi_max", r.xi_max);
    if (r.samples < 1) error(line_of("run.samples"), "run.samples must be >= 1");
    if (r.Z_samples < 1) error(line_of("run.Z_samples"), "run.Z_samples must be >= 1");
    if (r.Z_max < r.Z_min) error(line_of("run.Z_max"), "run.Z_max must be >= run.Z_min");
    if (r.Z < 0.0) error(line_of("run.Z"), "run.Z must be >= 0");
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      if (!(r.times[i] >= 0.0) || (i > 0 && r.times[i] < r.times[i - 1])) {
        error(line_of("run.times"), "run.times must be nondecreasing and >= 0");
        break;
      }
    }
    if (!(r.direction.norm() > 0.0)) error(line_of("run.direction"), "run.direction must be nonzero");
    if (!(r.beta.norm2() < 1.0)) error(line_of("run.beta"), "run.beta must satisfy |beta| < 1");
    if (r.steps_per_wavelength < 50) {
      error(line_of("run.steps_per_wavelength"), "run.steps_per_wavelength must be >= 50");
    }
  }

  RunConfig& cfg_;
  std::map<std::string, std::map<std::string, Handler>> handlers_;
  std::map<std::string, int> lines_;
  std::set<std::string> seen_sections_;
};

}  // namespace

double PulseConfig::resolved_peak_field() const {
  if (peak_field) return *peak_field;
  return Pulse::field_for_amplitude(amplitude.value_or(0.0), wavelength);
}

Species RunConfig::make_species() const {
  if (species.mass && species.charge) return {*species.mass, *species.charge, species.name};
  if (species.name == "positron") return Species::positron();
  if (species.name == "proton") return Species::proton();
  return Species::electron();
}

Pulse RunConfig::make_pulse(double quadrature_tol) const {
  const double peak = pulse.resolved_peak_field();
  Envelope env = [&] {
    switch (pulse.kind) {
      case EnvelopeKind::gaussian:
        return Envelope::gaussian(peak, *pulse.sigma, pulse.center);
      case EnvelopeKind::cutoff_polynomial:
        return Envelope::cutoff_polynomial(peak, *pulse.length);
      case EnvelopeKind::constant_window:
        return Envelope::constant_window(peak, *pulse.length);
      case EnvelopeKind::tabulated: {
        Envelope t = Envelope::load_tabulated(base_dir / pulse.file);
        if (pulse.amplitude || pulse.peak_field) t = t.rescaled(peak);
        return t;
      }
    }
    throw DomainError("unknown envelope kind");
  }();
  return Pulse(std::move(env), pulse.wavelength, pulse.polarization, quadrature_tol);
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_message(issues)), issues_(std::move(issues)) {}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  Parser parser(cfg);
  parser.parse(text);
  if (!parser.issues.empty()) throw ConfigError(std::move(parser.issues));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{0, "cannot open config file " + path.string()}});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

}  // namespace planewave
