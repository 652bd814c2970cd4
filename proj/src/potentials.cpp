#include "henderson/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace henderson {

double Majorant::operator()(double r) const { return C * std::pow(1.0 + r * r, -0.5 * alpha); }

namespace {

bool inside_core(double x, double sigma, double h) { return std::abs(x) < sigma - 1e-9 * h; }
bool on_edge(double x, double sigma, double h) { return std::abs(std::abs(x) - sigma) <= 1e-9 * h; }

}  // namespace

void PairPotential::validate() const {
  const GridSpec& g = spec();
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!boltzmann.is_finite()) throw std::invalid_argument("Boltzmann factor must be finite");
  double scale = boltzmann.max_abs();
  for (int k = 0; k < g.M(); ++k)
    if (boltzmann[k] < 0.0) throw std::invalid_argument("Boltzmann factor must be nonnegative");
  if (!boltzmann.is_even(1e-12 * scale)) throw std::invalid_argument("potential must be even");
  if (hardcore_radius) {
    for (int k = 0; k < g.M(); ++k)
      if (inside_core(g.x(k), *hardcore_radius, g.h()) && boltzmann[k] != 0.0)
        throw std::invalid_argument("Boltzmann factor must vanish inside the hard core");
  }
  if (!(majorant.alpha > 1.0)) throw std::invalid_argument("majorant exponent alpha must exceed 1");
  if (!(majorant.C > 0.0)) throw std::invalid_argument("majorant amplitude must be positive");
}

GridFunction PairPotential::u() const {
  GridFunction u(spec());
  for (int k = 0; k < u.size(); ++k)
    u[k] = boltzmann[k] > 0.0 ? -std::log(boltzmann[k]) / beta
                              : std::numeric_limits<double>::infinity();
  return u;
}

int PairPotential::edge_node() const {
  if (!hardcore_radius) return -1;
  return spec().node_of(*hardcore_radius);
}

PairPotential ideal_gas(const GridSpec& g, double beta) {
  PairPotential p;
  p.beta = beta;
  p.boltzmann = GridFunction(g, 1.0);
  return p;
}

PairPotential hard_rod(const GridSpec& g, double beta, double sigma) {
  return lj_type(g, beta, 0.0, sigma, 2.0);
}

PairPotential lj_type(const GridSpec& g, double beta, double epsilon, double sigma, double alpha) {
  if (!(sigma > 0.0)) throw std::invalid_argument("hard-core radius must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  PairPotential p;
  p.beta = beta;
  p.hardcore_radius = sigma;
  p.core_divergence = "hard core";
  double amp = epsilon * std::pow(1.0 + sigma * sigma, 0.5 * alpha);
  p.majorant = Majorant{epsilon > 0.0 ? amp : 1.0, alpha};
  p.boltzmann = GridFunction(g);
  for (int k = 0; k < g.M(); ++k) {
    double x = g.x(k);
    if (inside_core(x, sigma, g.h())) continue;
    double u = -amp * std::pow(1.0 + x * x, -0.5 * alpha);
    double b = std::exp(-beta * u);
    p.boltzmann[k] = on_edge(x, sigma, g.h()) ? 0.5 * b : b;
  }
  return p;
}

PairPotential from_u(const GridFunction& u, double beta, std::optional<double> hardcore,
                     Majorant m) {
  PairPotential p;
  p.beta = beta;
  p.majorant = m;
  p.hardcore_radius = hardcore;
  p.core_divergence = hardcore ? "hard core" : "none";
  const GridSpec& g = u.spec();
  p.boltzmann = GridFunction(g);
  for (int k = 0; k < g.M(); ++k) {
    if (hardcore && inside_core(g.x(k), *hardcore, g.h())) continue;
    double b = std::isinf(u[k]) && u[k] > 0 ? 0.0 : std::exp(-beta * u[k]);
    p.boltzmann[k] = hardcore && on_edge(g.x(k), *hardcore, g.h()) ? 0.5 * b : b;
  }
  return p;
}

PairPotential perturbed(const PairPotential& p, const GridFunction& v, double t) {
  require_same(p.spec(), v.spec(), "perturbed");
  PairPotential q = p;
  for (int k = 0; k < v.size(); ++k)
    if (q.boltzmann[k] > 0.0) q.boltzmann[k] *= std::exp(-p.beta * t * v[k]);
  return q;
}

PairPotential blend(const PairPotential& p1, const PairPotential& p2, double t) {
  require_same(p1.spec(), p2.spec(), "blend");
  PairPotential q = p1;
  if (p2.hardcore_radius && (!q.hardcore_radius || *p2.hardcore_radius > *q.hardcore_radius))
    q.hardcore_radius = p2.hardcore_radius;
  for (int k = 0; k < q.boltzmann.size(); ++k) {
    double a = p1.boltzmann[k], b = p2.boltzmann[k];
    q.boltzmann[k] = (a > 0.0 && b > 0.0) ? std::exp(t * std::log(a) + (1.0 - t) * std::log(b)) : 0.0;
  }
  return q;
}

double boltzmann_at(const PairPotential& p, double r) {
  const GridSpec& g = p.spec();
  double a = std::abs(r);
  if (p.hardcore_radius && a < *p.hardcore_radius) return 0.0;
  if (a > g.R()) return 1.0;
  const int c = g.center();
  int k = std::min(static_cast<int>(std::floor(a / g.h())), c - 1);
  int lo = c + k, hi = lo + 1;
  double bl = p.boltzmann[lo], br = p.boltzmann[hi];
  int e = p.edge_node();
  if (e >= 0) {
    int epos = std::max(e, g.M() - 1 - e);
    if (lo == epos) bl *= 2.0;
    if (hi == epos) br *= 2.0;
  }
  if (p.hardcore_radius && g.x(lo) < *p.hardcore_radius - 1e-9 * g.h()) bl = br;
  double t = a / g.h() - k;
  return (1.0 - t) * bl + t * br;
}

GridFunction mayer(const PairPotential& p, const GridSpec& g) {
  require_same(p.spec(), g, "mayer");
  GridFunction f(g);
  for (int k = 0; k < g.M(); ++k) f[k] = p.boltzmann[k] - 1.0;
  return f;
}

double v_norm(const GridFunction& v, const Majorant& m) {
  return v_norm_masked(v, m, GridFunction(v.spec(), 1.0));
}

double v_norm_masked(const GridFunction& v, const Majorant& m, const GridFunction& mask,
                     double even_tol) {
  require_same(v.spec(), mask.spec(), "v_norm");
  if (!v.is_finite()) throw std::invalid_argument("v_norm: non-finite input");
  if (even_tol < 0.0) even_tol = 1e-10 * v.max_abs();
  if (!v.is_even(even_tol)) throw std::invalid_argument("v_norm: input is not even");
  double n = 0.0;
  for (int k = 0; k < v.size(); ++k)
    if (mask[k] > 0.0) n = std::max(n, std::abs(v[k]) / m(v.spec().x(k)));
  return n;
}

StabilityEstimate stability_bound(const PairPotential& p, int n_max, int trials,
                                  std::uint64_t seed) {
  if (n_max < 2) throw std::invalid_argument("stability_bound: n_max must be >= 2");
  StabilityEstimate est;
  const GridSpec& g = p.spec();
  bool attractive = false;
  for (int k = 0; k < g.M(); ++k) attractive = attractive || p.boltzmann[k] > 1.0;
  if (!attractive) return est;

  auto pair_u = [&](double r) {
    double b = boltzmann_at(p, r);
    return b > 0.0 ? -std::log(b) / p.beta : std::numeric_limits<double>::infinity();
  };
  auto energy_per_particle = [&](const std::vector<double>& gaps) {
    std::vector<double> x(gaps.size() + 1, 0.0);
    for (std::size_t i = 0; i < gaps.size(); ++i) x[i + 1] = x[i] + gaps[i];
    double U = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) U += pair_u(x[j] - x[i]);
    return U / static_cast<double>(x.size());
  };

  double dmin = p.hardcore_radius.value_or(0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(dmin, std::max(dmin + g.h(), 0.5 * g.R()));
  std::uniform_int_distribution<int> count(2, n_max);
  // Best sample per particle count, each refined by coordinate descent on its gaps.
  std::vector<std::vector<double>> best_gaps(static_cast<std::size_t>(n_max + 1));
  std::vector<double> best(static_cast<std::size_t>(n_max + 1), 0.0);
  for (int t = 0; t < trials; ++t) {
    int n = count(rng);
    std::vector<double> gaps(static_cast<std::size_t>(n - 1));
    for (double& d : gaps) d = gap(rng);
    double e = energy_per_particle(gaps);
    ++est.samples;
    if (e < best[n]) {
      best[n] = e;
      best_gaps[n] = gaps;
    }
  }
  double worst = 0.0;  // most negative U/N seen
  for (int n = 2; n <= n_max; ++n) {
    std::vector<double>& gaps = best_gaps[n];
    double cur = best[n];
    for (double step = 0.25; step > 1e-4 && !gaps.empty(); step *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (double& d : gaps) {
          for (double s : {-step, step}) {
            double old = d;
            d = std::max(dmin, d + s);
            double e = energy_per_particle(gaps);
            ++est.samples;
            if (e < cur - 1e-15) {
              cur = e;
              improved = true;
            } else {
              d = old;
            }
          }
        }
      }
    }
    worst = std::min(worst, cur);
  }
  est.B = std::max(0.0, -worst);
  est.unstable = !std::isfinite(est.B);
  return est;
}

double c_beta(const PairPotential& p) {
  GridFunction f = mayer(p, p.spec());
  for (int k = 0; k < f.size(); ++k) f[k] = std::abs(f[k]);
  return integrate(f);
}

double gas_phase_mu0(const PairPotential& p, double B) {
  double c = c_beta(p);
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  return -(std::log(c) + 2.0 * p.beta * B + 1.0) / p.beta;
}

PairPotential pmf_initial_guess(const GridFunction& rho2_target, double rho_star, double beta,
                                double floor) {
  if (!(rho_star > 0.0)) throw std::invalid_argument("pmf_initial_guess: rho_star must be positive");
  const GridSpec& g = rho2_target.spec();
  for (int k = 0; k < g.M(); ++k)
    if (rho2_target[k] < 0.0)
      throw std::invalid_argument("pmf_initial_guess: target pair correlation is negative");
  const double r2 = rho_star * rho_star;
  PairPotential p;
  p.beta = beta;
  p.boltzmann = GridFunction(g);
  for (int k = 0; k < g.M(); ++k) {
    double ratio = rho2_target[k] / r2;
    p.boltzmann[k] = ratio < floor ? 0.0 : ratio;
  }
  const int c = g.center();
  if (p.boltzmann[c] == 0.0) {
    int k = c;
    while (k < g.M() && p.boltzmann[k] == 0.0) ++k;
    if (k < g.M()) {
      p.hardcore_radius = g.x(k);
      p.core_divergence = "hard core";
    }
  }
  return p;
}

}  // namespace henderson
