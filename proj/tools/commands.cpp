#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "check_suite.hpp"
#include "henderson/diagnostics.hpp"
#include "henderson/graphs.hpp"
#include "henderson/imc.hpp"
#include "henderson/io.hpp"
#include "henderson/oracle.hpp"
#include "henderson/thermo.hpp"

namespace henderson::cli {

namespace fs = std::filesystem;

std::vector<std::string> table_header(const RunConfig& cfg, const std::string& columns) {
  return {"config_hash " + cfg.hash, "n_max " + std::to_string(cfg.n_max), "columns " + columns};
}

nlohmann::json json_header(const RunConfig& cfg) {
  return {{"config_hash", cfg.hash}, {"n_max", cfg.n_max}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream o(path);
  if (!o) throw std::runtime_error("cannot write " + path);
  o << j.dump(2) << '\n';
}

double resolve_mu(const RunConfig& cfg, const PairPotential& p) {
  if (cfg.mu) return *cfg.mu;
  if (cfg.rho_star) return solve_mu_star(p, *cfg.rho_star, cfg.trunc()).mu_star;
  throw ConfigError("config needs `mu` or `target.rho_star`");
}

namespace {

std::string prepare(const std::string& out) {
  fs::create_directories(out);
  return out;
}

std::string numbered(const std::string& dir, const char* stem, int i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04d.dat", stem, i);
  return (fs::path(dir) / buf).string();
}

GridFunction rdf_of(const GridFunction& rho2, double rho) { return (1.0 / (rho * rho)) * rho2; }

}  // namespace

int cmd_forward(const RunConfig& cfg, const std::string& out) {
  const auto p = build_potential(cfg);
  const double mu = resolve_mu(cfg, p);
  const auto s = forward(p, mu, cfg.trunc());
  prepare(out);
  write_table((fs::path(out) / "rdf.dat").string(), rdf_of(pair_correlation(s), s.rho), table_header(cfg, "x g(x)"));
  write_table((fs::path(out) / "omega2.dat").string(), s.omega2, table_header(cfg, "x omega2(x)"));
  auto j = json_header(cfg);
  j["z"] = s.z;
  j["rho"] = s.rho;
  j["beta_p"] = s.beta_p;
  j["mu"] = s.mu;
  j["d_mu_rho"] = s.d_mu_rho;
  j["int_omega2"] = s.int_omega2;
  write_json((fs::path(out) / "summary.json").string(), j);
  std::cout << "rho " << s.rho << "  beta_p " << s.beta_p << "  mu " << s.mu << "\n";
  return kOk;
}

int cmd_invert(const RunConfig& cfg, const std::string& out) {
  if (cfg.rdf_path.empty()) throw ConfigError("invert needs `target.rdf_path`");
  if (!cfg.rho_star) throw ConfigError("invert needs `target.rho_star`");
  const GridSpec g = cfg.grid();
  const double rho = *cfg.rho_star;
  Target t{rho, (rho * rho) * table_to_grid(read_table(cfg.rdf_path), g)};
  t.validate();

  PairPotential p0;
  if (cfg.raw.count("potential.kind")) {
    p0 = build_potential(cfg);
    // Fail early with the infeasibility exit when the density is out of reach.
    solve_mu_star(p0, rho, cfg.trunc());
  } else {
    p0 = pmf_initial_guess(t.rho2_star, rho, cfg.beta);
    p0.majorant = Majorant{cfg.majorant_C > 0.0 ? cfg.majorant_C : 1.0,
                           cfg.majorant_alpha > 0.0 ? cfg.majorant_alpha : cfg.alpha};
  }

  prepare(out);
  std::ofstream log((fs::path(out) / "iterates.jsonl").string());
  if (!log) throw std::runtime_error("cannot write iterates.jsonl");
  log << json_header(cfg).dump() << '\n';
  IMCConfig ic = cfg.imc;
  ic.trunc = cfg.trunc();
  auto res = run_imc(p0, t, ic, [&](const IMCIterate& it, const EntropyEval& e) {
    log << nlohmann::json{{"iter", it.iter},          {"mu_star", it.mu_star},   {"grad_norm", it.grad_norm},
                          {"residual_norm", it.residual_norm}, {"step_len", it.step_len},
                          {"lambda", it.lambda},      {"v_norm_update", it.v_norm_update},
                          {"cg_iters", it.cg_iters},  {"phi", it.phi}}
               .dump()
        << '\n';
    write_table(numbered(out, "grad", it.iter), e.grad, table_header(cfg, "x grad_phi(x)"));
    write_table(numbered(out, "rdf_model", it.iter), rdf_of(e.state.rho2, rho), table_header(cfg, "x g_model(x)"));
    diag({{"stage", "imc"}, {"iter", it.iter}, {"grad_norm", it.grad_norm}});
  });
  write_table((fs::path(out) / "u_final.dat").string(), res.final_potential.u(), table_header(cfg, "x u(x)"));
  std::cout << "status " << res.status << "  iterations " << res.iterates.size() - 1 << "  iterations_to_tol "
            << res.iterations_to_tol << "\n";
  return res.converged ? kOk : kMaxIters;
}

int cmd_check(const RunConfig& cfg, const std::string& out, std::uint64_t seed, bool corrupt) {
  auto t0 = std::chrono::steady_clock::now();
  auto results = run_check_suite(cfg, seed, corrupt);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool all = true;
  auto j = json_header(cfg);
  j["seed"] = seed;
  j["checks"] = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("%-24s %s  %-12.4g %-6s %-10.4g %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.value,
                r.relation.c_str(), r.threshold, r.detail.c_str());
    j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"value", r.value}, {"threshold", r.threshold},
                           {"relation", r.relation}, {"detail", r.detail}});
  }
  j["all_pass"] = all;
  prepare(out);
  write_json((fs::path(out) / "check.json").string(), j);
  std::printf("suite runtime %.2f s, %s\n", secs, all ? "all PASS" : "FAILURES");
  return all ? kOk : kFailure;
}

int cmd_oracle(const RunConfig& cfg, const std::string& out) {
  const auto p = build_potential(cfg);
  const double mu = resolve_mu(cfg, p);
  const GridSpec g = p.spec();
  const auto s = forward(p, mu, cfg.trunc());
  auto j = json_header(cfg);
  j["L"] = cfg.box.L;
  j["N_cap"] = cfg.box.N_cap;
  j["mu"] = mu;
  j["xi"] = box_partition_function(p, mu, cfg.box);
  j["rho_model"] = s.rho;
  j["rho_box"] = nlohmann::json::array();
  for (double x : {0.0, 0.125 * cfg.box.L, 0.25 * cfg.box.L})
    j["rho_box"].push_back({{"x", x}, {"rho", box_correlation(p, mu, cfg.box, {x})}});
  j["omega2"] = nlohmann::json::array();
  for (int k = g.center(); k < g.M(); k += std::max(1, static_cast<int>(std::lround(0.5 / g.h())))) {
    double d = g.x(k);
    if (d > 0.5 * cfg.box.L) break;
    auto w = ursell_from_correlations(box_correlations(p, mu, cfg.box, {-0.5 * d, 0.5 * d}), 2);
    j["omega2"].push_back({{"d", d}, {"box", w[3]}, {"model", s.omega2[k]}});
  }
  prepare(out);
  write_json((fs::path(out) / "oracle.json").string(), j);
  std::cout << "xi " << j["xi"].get<double>() << "  rho model " << s.rho << "\n";
  return kOk;
}

}  // namespace henderson::cli
