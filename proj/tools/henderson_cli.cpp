#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "henderson/diagnostics.hpp"
#include "henderson/imc.hpp"
#include "henderson/io.hpp"
#include "henderson/thermo.hpp"

using namespace henderson;
using namespace henderson::cli;

int main(int argc, char** argv) {
  CLI::App app{"Cluster-expansion forward model and entropy-based pair-potential inversion"};
  app.require_subcommand(1);
  std::string config_path;
  Options opt;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "run configuration")->required();
  app.add_option("--output", opt.output_dir, "output directory (default: config output_dir)");
  auto* seed_opt = app.add_option("--seed", seed, "probe-vector seed (default: config seed)");
  app.add_flag("--verbose", opt.verbose, "JSON-lines diagnostics on stderr");
  app.fallthrough();

  auto* forward_cmd = app.add_subcommand("forward", "density, pressure and pair correlation at (mu, u)");
  auto* invert_cmd = app.add_subcommand("invert", "recover u from a target pair correlation");
  auto* check_cmd = app.add_subcommand("check", "run the invariant suite");
  check_cmd->add_flag("--corrupt-jacobian", opt.corrupt_jacobian)->group("");
  auto* oracle_cmd = app.add_subcommand("oracle", "compare with direct quadrature in a finite box");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParseError;
  }
  if (*seed_opt) opt.seed = seed;
  if (opt.verbose) set_diagnostics_stream(&std::cerr);

  try {
    RunConfig cfg = load_config(config_path);
    const std::string out = opt.output_dir.empty() ? cfg.output_dir : opt.output_dir;
    if (*forward_cmd) return cmd_forward(cfg, out);
    if (*invert_cmd) return cmd_invert(cfg, out);
    if (*check_cmd) return cmd_check(cfg, out, opt.seed.value_or(cfg.seed), opt.corrupt_jacobian);
    if (*oracle_cmd) return cmd_oracle(cfg, out);
  } catch (const InfeasibleDensity& e) {
    std::cerr << "infeasible density: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kParseError;
  } catch (const TableError& e) {
    std::cerr << "table error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
