#include "henderson/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "henderson/io.hpp"

namespace henderson {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k{
      "beta", "seed", "output_dir", "mu",
      "grid.R", "grid.M", "truncation.n_max",
      "potential.kind", "potential.epsilon", "potential.sigma", "potential.alpha",
      "potential.path", "potential.hardcore", "potential.majorant_C", "potential.majorant_alpha",
      "target.rho_star", "target.rdf_path",
      "imc.max_iters", "imc.grad_tol", "imc.polish_tol", "imc.lambda0", "imc.lambda_factor",
      "imc.damping", "imc.backtrack", "imc.cg_tol", "imc.cg_max", "imc.diagonal_only",
      "oracle.L", "oracle.N_cap", "oracle.quad_points", "oracle.quad_points_high"};
  return k;
}

double as_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long as_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

}  // namespace

std::string normalized(const RunConfig& cfg) {
  std::string s;
  for (const auto& [k, v] : cfg.raw) s += k + " = " + v + "\n";
  return s;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hashpos = line.find('#');
    if (hashpos != std::string::npos) line = line.substr(0, hashpos);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (val.empty()) throw ConfigError("config key '" + key + "': empty value");
    c.raw[key] = val;
  }

  auto get = [&](const std::string& k) -> const std::string* {
    auto it = c.raw.find(k);
    return it == c.raw.end() ? nullptr : &it->second;
  };
  auto path_of = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_absolute() ? v : (std::filesystem::path(base_dir) / p).string();
  };
  if (auto v = get("beta")) c.beta = as_double("beta", *v);
  if (auto v = get("seed")) c.seed = static_cast<std::uint64_t>(as_int("seed", *v));
  if (auto v = get("output_dir")) c.output_dir = *v;
  if (auto v = get("mu")) c.mu = as_double("mu", *v);
  if (auto v = get("grid.R")) c.R = as_double("grid.R", *v);
  if (auto v = get("grid.M")) c.M = static_cast<int>(as_int("grid.M", *v));
  if (auto v = get("truncation.n_max")) c.n_max = static_cast<int>(as_int("truncation.n_max", *v));
  if (auto v = get("potential.kind")) c.potential_kind = *v;
  if (auto v = get("potential.epsilon")) c.epsilon = as_double("potential.epsilon", *v);
  if (auto v = get("potential.sigma")) c.sigma = as_double("potential.sigma", *v);
  if (auto v = get("potential.alpha")) c.alpha = as_double("potential.alpha", *v);
  if (auto v = get("potential.path")) c.potential_path = path_of(*v);
  if (auto v = get("potential.hardcore")) c.hardcore = as_double("potential.hardcore", *v);
  if (auto v = get("potential.majorant_C")) c.majorant_C = as_double("potential.majorant_C", *v);
  if (auto v = get("potential.majorant_alpha")) c.majorant_alpha = as_double("potential.majorant_alpha", *v);
  if (auto v = get("target.rho_star")) c.rho_star = as_double("target.rho_star", *v);
  if (auto v = get("target.rdf_path")) c.rdf_path = path_of(*v);
  if (auto v = get("imc.max_iters")) c.imc.max_iters = static_cast<int>(as_int("imc.max_iters", *v));
  if (auto v = get("imc.grad_tol")) c.imc.grad_tol = as_double("imc.grad_tol", *v);
  if (auto v = get("imc.polish_tol")) c.imc.polish_tol = as_double("imc.polish_tol", *v);
  if (auto v = get("imc.lambda0")) c.imc.lambda0 = as_double("imc.lambda0", *v);
  if (auto v = get("imc.lambda_factor")) c.imc.lambda_factor = as_double("imc.lambda_factor", *v);
  if (auto v = get("imc.damping")) c.imc.damping = as_double("imc.damping", *v);
  if (auto v = get("imc.backtrack")) c.imc.backtrack = as_double("imc.backtrack", *v);
  if (auto v = get("imc.cg_tol")) c.imc.cg_tol = as_double("imc.cg_tol", *v);
  if (auto v = get("imc.cg_max")) c.imc.cg_max = static_cast<int>(as_int("imc.cg_max", *v));
  if (auto v = get("imc.diagonal_only")) c.imc.diagonal_only = as_bool("imc.diagonal_only", *v);
  if (auto v = get("oracle.L")) c.box.L = as_double("oracle.L", *v);
  if (auto v = get("oracle.N_cap")) c.box.N_cap = static_cast<int>(as_int("oracle.N_cap", *v));
  if (auto v = get("oracle.quad_points")) c.box.quad_points = static_cast<int>(as_int("oracle.quad_points", *v));
  if (auto v = get("oracle.quad_points_high"))
    c.box.quad_points_high = static_cast<int>(as_int("oracle.quad_points_high", *v));

  if (!(c.beta > 0.0)) throw ConfigError("config key 'beta' must be positive");
  if (!(c.R > 0.0)) throw ConfigError("config key 'grid.R' must be positive");
  if (c.M < 3 || c.M % 2 == 0 || c.M > 4097) throw ConfigError("config key 'grid.M' must be odd, in 3..4097");
  if (c.n_max < 2 || c.n_max > 5) throw ConfigError("config key 'truncation.n_max' must be in 2..5");
  static const std::set<std::string> kinds{"tabulated", "lj_type", "hard_rod", "ideal"};
  if (!kinds.count(c.potential_kind))
    throw ConfigError("config key 'potential.kind' must be one of tabulated|lj_type|hard_rod|ideal");
  if (c.potential_kind == "tabulated" && c.potential_path.empty())
    throw ConfigError("config key 'potential.path' is required for tabulated potentials");
  if (c.rho_star && !(*c.rho_star > 0.0)) throw ConfigError("config key 'target.rho_star' must be positive");
  try {
    c.imc.trunc = c.trunc();
    c.imc.validate();
    c.box.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.hash = sha256_hex(normalized(c)).substr(0, 16);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), dir.empty() ? "." : dir);
}

PairPotential build_potential(const RunConfig& cfg) {
  const GridSpec g = cfg.grid();
  PairPotential p;
  if (cfg.potential_kind == "ideal") {
    p = ideal_gas(g, cfg.beta);
  } else if (cfg.potential_kind == "hard_rod") {
    p = hard_rod(g, cfg.beta, cfg.sigma);
  } else if (cfg.potential_kind == "lj_type") {
    p = lj_type(g, cfg.beta, cfg.epsilon, cfg.sigma, cfg.alpha);
  } else {
    GridFunction u = table_to_grid(read_table(cfg.potential_path), g);
    std::optional<double> hc = cfg.hardcore;
    if (!hc) {
      const int c = g.center();
      if (std::isinf(u[c])) {
        int k = c;
        while (k < g.M() && std::isinf(u[k])) ++k;
        if (k < g.M()) hc = g.x(k);
      }
    }
    p = from_u(u, cfg.beta, hc, Majorant{1.0, cfg.alpha});
  }
  if (cfg.majorant_C > 0.0) p.majorant.C = cfg.majorant_C;
  if (cfg.majorant_alpha > 0.0) p.majorant.alpha = cfg.majorant_alpha;
  p.validate();
  return p;
}

}  // namespace henderson
