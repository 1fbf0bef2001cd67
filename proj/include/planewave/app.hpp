#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planewave/config.hpp"

namespace planewave {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitConfig = 2, kExitNumerical = 3 };

struct AppOptions {
  std::filesystem::path out_dir = ".";
  int threads = 1;
  std::optional<double> tolerance;    // overrides run.tolerance
  std::optional<double> threshold_T;  // overrides run.threshold_T
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand, writing its CSV files and summary.json into options.out_dir.
/// Human-readable progress goes to `log`, diagnostics to `err`.
int run(std::string_view subcommand, RunConfig cfg, const AppOptions& options, std::ostream& log,
        std::ostream& err);

}  // namespace planewave
