#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "planewave/app.hpp"
#include "planewave/config.hpp"

int main(int argc, char** argv) {
  using namespace planewave;
  CLI::App cli{"Plane-wave solutions of the relativistic cold-plasma equations"};
  std::string subcommand;
  std::string config_path;
  std::string config_positional;
  AppOptions opt;
  std::string out_dir = ".";
  double tolerance = 0.0;
  double threshold_T = 0.0;

  cli.add_option("subcommand", subcommand, "What to compute")
      ->required()
      ->check(CLI::IsMember(subcommands()));
  cli.add_option("config_file", config_positional, "Config file (same as --config)");
  cli.add_option("--config", config_path, "Config file");
  cli.add_option("--out", out_dir, "Output directory")->capture_default_str();
  cli.add_option("--threads", opt.threads, "Worker threads for batch loops")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* tol = cli.add_option("--tolerance", tolerance, "Relative tolerance of the tabulations")
                  ->check(CLI::Range(1e-15, 1e-2));
  auto* thr = cli.add_option("--threshold-T", threshold_T, "Pass threshold for max T on [0, xi0]")
                  ->check(CLI::PositiveNumber);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!config_path.empty() && !config_positional.empty() && config_path != config_positional) {
    std::cerr << "config given twice: " << config_positional << " and " << config_path << '\n';
    return kExitConfig;
  }
  if (config_path.empty()) config_path = config_positional;
  if (config_path.empty()) {
    std::cerr << "a config file is required (--config PATH)\n";
    return kExitConfig;
  }
  opt.out_dir = out_dir;
  if (*tol) opt.tolerance = tolerance;
  if (*thr) opt.threshold_T = threshold_T;

  try {
    const RunConfig cfg = load_config(config_path);
    return run(subcommand, cfg, opt, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
