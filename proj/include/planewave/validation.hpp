#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "planewave/config.hpp"

namespace planewave {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured error or quantity
  double threshold = 0.0;  // pass bound on `value`
  std::string detail;
};

/// Runs every module's invariant checks on the configured pulse, species and plasma.
std::vector<CheckResult> run_validation(const RunConfig& cfg, int threads = 1);

/// CSV `suite,check,passed,value,threshold,detail`.
void write_validation_csv(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace planewave
