#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "henderson/imc.hpp"
#include "henderson/oracle.hpp"

namespace henderson {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat `key = value` text with dotted section names and '#' comments.
struct RunConfig {
  std::map<std::string, std::string> raw;
  std::string hash;  // first 16 hex digits of SHA-256 over the normalized key/value list

  double beta = 1.0;
  double R = 16.0;
  int M = 321;
  int n_max = 4;
  std::string potential_kind = "hard_rod";  // tabulated | lj_type | hard_rod | ideal
  double epsilon = 0.0;
  double sigma = 1.0;
  double alpha = 6.0;
  std::string potential_path;
  std::optional<double> hardcore;  // for tabulated potentials
  std::optional<double> mu;
  std::optional<double> rho_star;
  std::string rdf_path;
  IMCConfig imc;
  std::string output_dir = "out";
  std::uint64_t seed = 42;
  BoxSpec box;
  double majorant_C = 0.0;      // 0: taken from the potential
  double majorant_alpha = 0.0;

  GridSpec grid() const { return GridSpec(R, M); }
  ClusterTruncation trunc() const { return ClusterTruncation{n_max}; }
};

RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
// Key list, one `key = value` per line, sorted; what the hash is computed over.
std::string normalized(const RunConfig& cfg);

PairPotential build_potential(const RunConfig& cfg);

}  // namespace henderson
