#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "henderson/config.hpp"
#include "json.hpp"

namespace henderson::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInfeasible = 2,
  kParseError = 3,
  kMaxIters = 4,
};

struct Options {
  std::string output_dir;             // empty: the config's output_dir
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  bool verbose = false;
  bool corrupt_jacobian = false;      // fault injection for the check suite
};

// Header lines carried by every output table.
std::vector<std::string> table_header(const RunConfig& cfg, const std::string& columns);
// Fields carried by every JSON output.
nlohmann::json json_header(const RunConfig& cfg);
void write_json(const std::string& path, const nlohmann::json& j);
// mu from the config, or solved from target.rho_star. Throws ConfigError when neither is set.
double resolve_mu(const RunConfig& cfg, const PairPotential& p);

int cmd_forward(const RunConfig& cfg, const std::string& out);
int cmd_invert(const RunConfig& cfg, const std::string& out);
int cmd_check(const RunConfig& cfg, const std::string& out, std::uint64_t seed, bool corrupt);
int cmd_oracle(const RunConfig& cfg, const std::string& out);

}  // namespace henderson::cli
