#include "henderson/thermo.hpp"

#include <cmath>
#include <limits>

#include "henderson/diagnostics.hpp"

namespace henderson {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// sum_{k+l <= N} a_k g_l for scalar orders a and function orders g.
GridFunction scalar_times_functions(const std::vector<double>& a, const std::vector<GridFunction>& g,
                                    int N, const GridSpec& spec) {
  GridFunction r(spec);
  for (int k = 0; k <= N; ++k) {
    if (a[k] == 0.0) continue;
    for (int l = 0; k + l <= N; ++l)
      if (g[l].size() == spec.M()) r.axpy(a[k], g[l]);
  }
  return r;
}

}  // namespace

std::shared_ptr<const ClusterTables> make_tables(const PairPotential& p, const ClusterTruncation& tr,
                                                 bool with_K4) {
  p.validate();
  return std::make_shared<const ClusterTables>(build_tables(p, tr, with_K4));
}

ThermoState forward(const PairPotential& p, double mu, const ClusterTruncation& tr) {
  return forward(make_tables(p, tr, false), p.beta, mu);
}

ThermoState forward(std::shared_ptr<const ClusterTables> t, double beta, double mu) {
  const GridSpec& g = t->spec;
  const int N = t->n_max;
  ThermoState s;
  s.beta = beta;
  s.mu = mu;
  s.z = std::exp(beta * mu);
  s.n_max = N;
  s.tables = t;
  s.mask = t->mask;
  s.series = cluster_series(*t, s.z);
  const ClusterSeries& c = s.series;

  s.rho = sum_orders(c.rho);
  s.beta_p = sum_orders(c.beta_p);
  s.omega2 = sum_orders(c.omega2, g);

  std::vector<double> J(static_cast<std::size_t>(N + 1), 0.0), P(J), rho_n(c.rho);
  std::vector<GridFunction> r_n(static_cast<std::size_t>(N + 1), GridFunction(g));
  double zn = 1.0;
  for (int n = 1; n <= N; ++n) {
    zn *= s.z;
    P[n] = beta * n * c.rho[n];
    if (n >= 2) J[n] = integrate(c.omega2[n]);
    if (n >= 3) r_n[n] = (zn / factorial(n - 3)) * t->I[n];
  }
  s.d_mu_rho = sum_orders(P);
  s.int_omega2 = sum_orders(J);
  s.omega3_rowint = sum_orders(r_n, g);
  s.d_mu_omega2 = 2.0 * beta * s.omega2;
  s.d_mu_omega2.axpy(beta, s.omega3_rowint);

  std::vector<double> rho_sq = series_product(rho_n, rho_n, N);
  s.rho2 = s.omega2;
  double rho_sq_total = sum_orders(rho_sq);
  for (int k = 0; k < g.M(); ++k) s.rho2[k] = s.mask[k] > 0.0 ? s.rho2[k] + rho_sq_total : 0.0;

  s.rho_omega2 = scalar_times_functions(rho_n, c.omega2, N, g);
  s.rho_rowint3 = scalar_times_functions(rho_n, r_n, N, g);
  s.rho_cubed = sum_orders(series_product(rho_sq, rho_n, N));
  s.rho_sq_int_omega2 = sum_orders(series_product(rho_sq, J, N));
  s.rho_d_mu_rho = sum_orders(series_product(rho_n, P, N));
  const double rho_J = sum_orders(series_product(rho_n, J, N));

  s.grad_u_rho = GridFunction(g);
  for (int k = 0; k < g.M(); ++k)
    if (s.mask[k] > 0.0)
      s.grad_u_rho[k] = -beta * s.rho2[k] - 0.5 * beta * s.omega3_rowint[k] - beta * rho_J;
  return s;
}

GridFunction pair_correlation(const ThermoState& s) { return s.rho2; }

MuStarResult solve_mu_star(const PairPotential& p, double rho_star, const ClusterTruncation& tr,
                           double tol) {
  return solve_mu_star(make_tables(p, tr, false), p, rho_star, tol);
}

MuStarResult solve_mu_star(std::shared_ptr<const ClusterTables> t, const PairPotential& p,
                           double rho_star, double tol) {
  if (!(rho_star > 0.0)) throw InfeasibleDensity("target density must be positive");
  if (p.hardcore_radius && rho_star * *p.hardcore_radius >= 1.0)
    throw InfeasibleDensity("target density at or above the hard-core packing density 1/sigma");
  const double beta = p.beta;
  const double mu_ideal = std::log(rho_star) / beta;
  double mu0 = gas_phase_mu0(p, stability_bound(p, std::max(2, t->n_max), 2000).B);
  double lo = mu_ideal - 5.0;
  double hi = std::isfinite(mu0) ? mu0 : mu_ideal + 5.0;
  if (hi <= lo) throw InfeasibleDensity("target density lies beyond the gas phase");
  ThermoState s_hi = forward(t, beta, hi);
  if (s_hi.rho < rho_star)
    throw InfeasibleDensity("target density exceeds the gas-phase density bound rho(mu0)");

  MuStarResult r;
  double mu = std::min(std::max(mu_ideal, lo), hi);
  for (int it = 0; it < 50; ++it) {
    ThermoState s = forward(t, beta, mu);
    double gval = s.rho - rho_star;
    r.iterations = it + 1;
    if (std::abs(gval) <= tol * rho_star) {
      r.mu_star = mu;
      r.state = std::move(s);
      return r;
    }
    if (gval < 0.0) lo = mu;
    else hi = mu;
    double next = s.d_mu_rho > 0.0 ? mu - gval / s.d_mu_rho : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == mu) {
      r.mu_star = mu;
      r.state = std::move(s);
      return r;
    }
    mu = next;
  }
  throw std::runtime_error("chemical potential Newton solve did not converge in 50 steps");
}

double mu_star_derivative(const ThermoState& s, const GridFunction& v) {
  if (!(s.d_mu_rho > 0.0)) throw std::domain_error("d rho / d mu must be positive");
  return -inner(v, s.grad_u_rho) / s.d_mu_rho;
}

KSReport ks_residual(const PairPotential& p, double mu, const ClusterTruncation& tr) {
  if (tr.n_max > 4) throw std::invalid_argument("ks_residual supports n_max <= 4");
  auto t = make_tables(p, tr, false);
  ThermoState s = forward(t, p.beta, mu);
  const GridSpec& g = s.omega2.spec();
  const int M = g.M(), c = g.center(), N = tr.n_max;
  const GridFunction f = mayer(p, g);
  const Kernel2D omega3 = sum_orders(s.series.omega3, g);
  const double rho = s.rho;
  const double rho_sq = sum_orders(series_product(s.series.rho, s.series.rho, N));
  std::vector<double> w(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) w[k] = g.weight(k);
  std::vector<int> support;
  for (int k = 0; k < M; ++k)
    if (f[k] != 0.0) support.push_back(k);

  auto in_grid = [&](int d) { return d >= -c && d <= c; };
  auto omega2_at = [&](int d) { return in_grid(d) ? s.omega2[c + d] : 0.0; };
  auto rho2_at = [&](int d) { return in_grid(d) ? s.rho2[c + d] : rho_sq; };
  // rho3 at node offsets (a, b, e) relative to the origin.
  auto rho3_at = [&](int a, int b, int e) {
    int x = a - b, xp = e - b;
    double w3 = (in_grid(x) && in_grid(xp)) ? omega3(c + x, c + xp) : 0.0;
    return w3 + rho * (omega2_at(a - b) + omega2_at(a - e) + omega2_at(b - e)) + rho * rho * rho;
  };

  KSReport rep;
  rep.rho = rho;
  rep.window = 0.5 * g.R();

  double series = 1.0;
  if (N - 1 >= 1) series += rho * integrate(f);
  if (N - 1 >= 2) {
    double acc = 0.0;
    for (int i : support)
      for (int j : support) acc += w[i] * w[j] * f[i] * f[j] * rho2_at(i - j);
    series += 0.5 * acc;
  }
  if (N - 1 >= 3) {
    double acc = 0.0;
    for (int i : support)
      for (int j : support)
        for (int k : support)
          acc += w[i] * w[j] * w[k] * f[i] * f[j] * f[k] * rho3_at(i - c, j - c, k - c);
    series += acc / 6.0;
  }
  rep.m0 = std::abs(rho - s.z * series);

  double m1 = 0.0, scale = 0.0;
  for (int xi = 0; xi < M; ++xi) {
    if (std::abs(g.x(xi)) > rep.window + 1e-12) continue;
    const int x = xi - c;
    double inner_sum = rho;
    if (N - 2 >= 1) {
      double acc = 0.0;
      for (int k = 0; k < M; ++k) {
        int d = x - (k - c);
        if (!in_grid(d)) continue;
        acc += w[k] * f[c + d] * s.rho2[k];
      }
      inner_sum += acc;
    }
    if (N - 2 >= 2) {
      double acc = 0.0;
      for (int k = 0; k < M; ++k) {
        int d1 = x - (k - c);
        if (!in_grid(d1) || f[c + d1] == 0.0) continue;
        for (int l = 0; l < M; ++l) {
          int d2 = x - (l - c);
          if (!in_grid(d2) || f[c + d2] == 0.0) continue;
          acc += w[k] * w[l] * f[c + d1] * f[c + d2] * rho3_at(k - c, 0, l - c);
        }
      }
      inner_sum += 0.5 * acc;
    }
    double rhs = s.z * p.boltzmann[xi] * inner_sum;
    m1 = std::max(m1, std::abs(s.rho2[xi] - rhs));
    scale = std::max(scale, std::abs(s.rho2[xi]));
  }
  rep.m1 = m1;
  rep.rho2_scale = scale;
  return rep;
}

}  // namespace henderson
