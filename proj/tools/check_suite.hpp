#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "henderson/config.hpp"

namespace henderson::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // how value is compared with threshold
  std::string detail;
};

// Invariant suite on the configured potential at the configured state point.
std::vector<CheckResult> run_check_suite(const RunConfig& cfg, std::uint64_t seed, bool corrupt_jacobian);

}  // namespace henderson::cli
