#include "check_suite.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "henderson/diagnostics.hpp"
#include "henderson/entropy.hpp"
#include "henderson/graphs.hpp"
#include "henderson/oracle.hpp"
#include "henderson/thermo.hpp"

namespace henderson::cli {

namespace {

// Smooth even probe with the potential's tail envelope, zero in the core and zero for
// |x| > R/2. Chains of pair distances from probe support to the window edge would
// otherwise expose the finite-window truncation of the forward model.
GridFunction probe(const PairPotential& p, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  double a[4];
  for (double& x : a) x = N(rng);
  const double R = p.spec().R();
  GridFunction v = GridFunction::sample(p.spec(), [&](double x) {
    double r = std::abs(x) / R, taper = 1.0;
    if (r > 0.5) taper = 0.0;
    else if (r > 0.3) taper = std::pow(std::cos(0.5 * M_PI * (r - 0.3) / 0.2), 2);
    return taper * p.majorant(x) *
           (a[0] + a[1] * std::cos(0.7 * x) + a[2] * std::cos(1.9 * x) + a[3] * std::exp(-x * x));
  });
  for (int k = 0; k < v.size(); ++k)
    if (p.boltzmann[k] == 0.0) v[k] = 0.0;
  return v;
}

GridFunction random_even(const GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  GridFunction v(g);
  const int M = g.M();
  for (int k = 0; k <= M / 2; ++k) v[k] = v[M - 1 - k] = U(rng);
  return v;
}

std::string fmt(const char* label, double x) {
  std::ostringstream s;
  s << label << x;
  return s.str();
}

CheckResult below(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value < threshold, value, threshold, "<", std::move(detail)};
}

CheckResult above(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, ">=", std::move(detail)};
}

double inf_norm_remainder(const GridFunction& Ft, const GridFunction& F0, double t, const GridFunction& Fv) {
  double m = 0.0;
  for (int i = 0; i < F0.size(); ++i) m = std::max(m, std::abs(Ft[i] - F0[i] - t * Fv[i]));
  return m;
}

}  // namespace

std::vector<CheckResult> run_check_suite(const RunConfig& cfg, std::uint64_t seed, bool corrupt_jacobian) {
  std::vector<CheckResult> out;
  const PairPotential p = build_potential(cfg);
  const GridSpec g = p.spec();
  const ClusterTruncation tr = cfg.trunc();
  const double mu = resolve_mu(cfg, p);
  const double beta = p.beta;
  std::mt19937_64 rng(seed);
  auto tables = make_tables(p, tr, true);
  const ThermoState s = forward(tables, beta, mu);
  diag({{"stage", "check"}, {"rho", s.rho}, {"z", s.z}});

  // Density response and the Schwarz identity, by central differences in mu.
  {
    const double d = 1e-4;
    auto sp = forward(tables, beta, mu + d), sm = forward(tables, beta, mu - d);
    double fd = (sp.rho - sm.rho) / (2.0 * d);
    double claim = beta * (s.rho + s.int_omega2);
    out.push_back(below("d_mu_rho", std::abs(fd - claim) / claim, 1e-3, fmt("fd=", fd)));
    auto d_mu_rho2 = (1.0 / (2.0 * d)) * (sp.rho2 - sm.rho2);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      auto w = random_even(g, rng);
      for (int k = 0; k < g.M(); ++k)
        if (s.mask[k] == 0.0) w[k] = 0.0;
      double rhs = -2.0 * inner(w, s.grad_u_rho);
      worst = std::max(worst, std::abs(inner(w, d_mu_rho2) - rhs) / std::abs(rhs));
    }
    out.push_back(below("schwarz_identity", worst, 1e-3));
  }

  // Gradient and Jacobian of the entropy functional against finite differences.
  auto bump = probe(p, rng);
  bump *= 0.1 / v_norm(bump, p.majorant);
  Target t{s.rho, henderson_F(perturbed(p, bump), s.rho, tr)};
  auto e0 = phi(p, t, tr, true);
  auto k = jacobian_kernels(e0.state);
  {
    auto v = probe(p, rng);
    v *= 1.0 / v_norm(v, p.majorant);
    const std::vector<double> ts{1e-2, 1e-3, 1e-4};
    auto rep = fd_check("phi", [&](double h) { return phi(perturbed(p, v, h), t, tr).phi; }, inner(v, e0.grad), ts);
    out.push_back(above("phi_gradient_fd_slope", rep.slope, 1.9));

    auto F0 = henderson_F(p, t.rho_star, tr);
    auto Fv = apply_F_prime(e0.state, k, v);
    std::vector<double> rems;
    for (double h : ts) rems.push_back(inf_norm_remainder(henderson_F(perturbed(p, v, h), t.rho_star, tr), F0, h, Fv));
    out.push_back(above("jacobian_fd_slope", loglog_slope(ts, rems), 1.9));
  }

  // Symmetry, semidefiniteness and the two Hessian paths on seeded probes.
  {
    FPrimeOptions opt;
    opt.corrupt = corrupt_jacobian;
    const double unit = beta * e0.state.rho2.max_abs();
    std::vector<GridFunction> P;
    for (int i = 0; i < 20; ++i) P.push_back(probe(p, rng));
    double sym = 0.0, rq = INFINITY, two = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto& a = P[i];
      const auto& b = P[(i + 1) % 20];
      auto Fa = apply_F_prime(e0.state, k, a, opt), Fb = apply_F_prime(e0.state, k, b, opt);
      double scale = unit * std::sqrt(inner(a, a) * inner(b, b));
      sym = std::max(sym, std::abs(inner(b, Fa) - inner(a, Fb)) / scale);
      rq = std::min(rq, -inner(a, Fa) / (unit * inner(a, a)));
      double h1 = hessian_form(e0.state, k, a, b), h2 = hessian_form_direct(e0.state, k, a, b);
      two = std::max(two, std::abs(h1 - h2) / std::abs(h1));
    }
    out.push_back(below("jacobian_symmetry", sym, 1e-8));
    out.push_back(above("jacobian_semidefinite", rq, -1e-8, "min Rayleigh quotient of -F'"));
    out.push_back(below("hessian_two_path", two, 1e-6));
  }

  // Convexity along segments and the pressure bounds on seeded pairs.
  {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = INFINITY;
    for (int i = 0; i < 3; ++i) {
      auto w1 = probe(p, rng), w2 = probe(p, rng);
      auto p1 = perturbed(p, w1, 0.2 / v_norm(w1, p.majorant));
      auto p2 = perturbed(p, w2, 0.2 / v_norm(w2, p.majorant));
      double mu1 = mu + 0.2 * U(rng), mu2 = mu + 0.2 * U(rng);
      auto s1 = forward(p1, mu1, tr), s2 = forward(p2, mu2, tr);
      for (double a : {0.25, 0.5, 0.75}) {
        auto sa = forward(blend(p1, p2, a), a * mu1 + (1.0 - a) * mu2, tr);
        worst = std::min(worst, a * s1.beta_p + (1.0 - a) * s2.beta_p - sa.beta_p);
      }
      GridFunction du(g);
      auto u1 = p1.u(), u2 = p2.u();
      for (int j = 0; j < g.M(); ++j) du[j] = p1.boltzmann[j] > 0.0 ? beta * (u2[j] - u1[j]) : 0.0;
      double dp = s2.beta_p - s1.beta_p;
      worst = std::min(worst, dp - (beta * (mu2 - mu1) * s1.rho - 0.5 * inner(du, s1.rho2)));
      worst = std::min(worst, beta * (mu2 - mu1) * s2.rho - 0.5 * inner(du, s2.rho2) - dp);
      double f1 = phi(p1, t, tr).phi, f2 = phi(p2, t, tr).phi;
      for (double a : {0.25, 0.5, 0.75})
        worst = std::min(worst, a * f1 + (1.0 - a) * f2 - phi(blend(p1, p2, a), t, tr).phi);
    }
    out.push_back({"convexity_margin", worst > 0.0, worst, 0.0, ">", "smallest margin over 3 seeded pairs"});
  }

  // Direct quadrature of the box partition function.
  {
    double worst_rho = 0.0, worst_w2 = 0.0;
    for (double x : {0.0, 0.125 * cfg.box.L})
      worst_rho = std::max(worst_rho, std::abs(box_correlation(p, mu, cfg.box, {x}) - s.rho));
    for (double d : {1.25, 2.0, 3.0}) {
      int node = g.center() + static_cast<int>(std::lround(d / g.h()));
      if (node >= g.M() || 0.5 * g.x(node) > 0.25 * cfg.box.L) continue;
      double x = g.x(node);
      auto w = ursell_from_correlations(box_correlations(p, mu, cfg.box, {-0.5 * x, 0.5 * x}), 2);
      worst_w2 = std::max(worst_w2, std::abs(w[3] - s.omega2[node]));
    }
    out.push_back(below("oracle_rho", worst_rho, 1e-4));
    out.push_back(below("oracle_omega2", worst_w2, 1e-4));
  }

  // Decay: the weighted sup of omega2 is insensitive to halving the window.
  {
    const int half_M = (g.M() - 1) / 2 + 1;
    GridSpec gh(0.5 * g.R(), half_M % 2 ? half_M : half_M + 1);
    RunConfig c2 = cfg;
    c2.R = gh.R();
    c2.M = gh.M();
    auto ph = build_potential(c2);
    double r_full = v_norm(s.omega2, p.majorant);
    double r_half = v_norm(forward(ph, mu, tr).omega2, ph.majorant);
    double change = std::abs(r_full - r_half) / std::max(r_full, 1e-300);
    out.push_back(below("decay_ratio_change", change, 0.05, fmt("sup|omega2|/psi0=", r_full)));
    double row = sum_orders(s.series.omega3, g).row_abs_integrals().max_abs();
    out.push_back({"omega3_row_l1_finite", std::isfinite(row), row, 0.0, "finite", ""});
  }

  // Kirkwood-Salsburg residuals under activity halving.
  {
    std::vector<double> zs, r0, r1;
    for (int i = 0; i < 4; ++i) {
      double z = s.z / std::pow(2.0, i);
      auto r = ks_residual(p, std::log(z) / beta, tr);
      zs.push_back(z);
      r0.push_back(r.m0);
      r1.push_back(r.m1);
    }
    const double need = tr.n_max + 0.9;
    if (r0.front() == 0.0 && r1.front() == 0.0) {
      out.push_back({"ks_residual_order", true, 0.0, need, "exact", "residuals vanish"});
    } else {
      double s0 = loglog_slope(zs, r0), s1 = loglog_slope(zs, r1);
      out.push_back(above("ks_residual_order", std::min(s0, s1), need, fmt("m0 slope ", s0) + fmt(", m1 slope ", s1)));
    }
  }
  return out;
}

}  // namespace henderson::cli
