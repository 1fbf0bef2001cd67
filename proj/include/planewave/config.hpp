#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planewave/kinematics.hpp"
#include "planewave/plasma_correction.hpp"
#include "planewave/pulse.hpp"
#include "planewave/vec.hpp"

namespace planewave {

struct PulseConfig {
  EnvelopeKind kind = EnvelopeKind::gaussian;
  double wavelength = 0.0;  // cm
  Polarization polarization = Polarization::circular;
  std::optional<double> amplitude;   // peak w
  std::optional<double> peak_field;  // statvolt/cm
  std::optional<double> sigma;
  std::optional<double> center;
  std::optional<double> length;
  std::string file;  // tabulated envelope, relative to the config file

  /// Peak field in statvolt/cm from whichever amplitude form was given.
  double resolved_peak_field() const;
};

struct SpeciesConfig {
  std::string name = "electron";
  std::optional<double> mass;    // g
  std::optional<double> charge;  // statC
};

struct PlasmaConfig {
  double n0 = 0.0;  // 1/cm^3
  std::optional<double> radius;
  std::optional<double> length;
};

struct RunSection {
  double tolerance = 1e-10;
  double threshold_T = 0.1;
  double threshold_cond2 = 0.1;
  std::optional<double> xi_max;
  int samples = 400;
  std::vector<double> times;  // lab times x0 (cm)
  double Z_min = 0.0;
  double Z_max = 0.0;
  int Z_samples = 1;
  double Z = 0.0;  // plasma depth for correction output
  Vec3 direction{0, 0, 1};
  Vec3 beta{};
  Vec3 position{};
  int steps_per_wavelength = 200;
};

struct RunConfig {
  PulseConfig pulse;
  SpeciesConfig species;
  PlasmaConfig plasma;
  RunSection run;
  std::filesystem::path base_dir;

  Species make_species() const;
  Pulse make_pulse(double quadrature_tol = 1e-12) const;
  PlasmaSetup make_plasma() const { return PlasmaSetup(plasma.n0); }
};

struct ConfigIssue {
  int line = 0;  // 0 when the issue is not tied to one line
  std::string message;
};

/// All problems found in a config file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses sectioned `key = value` text; `#` and `;` start comments.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace planewave
