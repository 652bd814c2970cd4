#include "henderson/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <stdexcept>

namespace henderson {

void BoxSpec::validate() const {
  if (!(L > 0.0)) throw std::invalid_argument("box length must be positive");
  if (N_cap < 0 || N_cap > 5) throw std::invalid_argument("N_cap must be in 0..5");
  if (quad_points < 1 || quad_points_high < 1) throw std::invalid_argument("quadrature order must be positive");
}

namespace {

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

template <unsigned N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(w[i]);
    } else {
      r.x.push_back(-a[i]);
      r.w.push_back(w[i]);
      r.x.push_back(a[i]);
      r.w.push_back(w[i]);
    }
  }
  return r;
}

const Rule& rule(int q) {
  static const Rule r4 = make_rule<4>(), r8 = make_rule<8>(), r16 = make_rule<16>(),
                    r24 = make_rule<24>(), r32 = make_rule<32>(), r64 = make_rule<64>();
  if (q <= 4) return r4;
  if (q <= 8) return r8;
  if (q <= 16) return r16;
  if (q <= 24) return r24;
  if (q <= 32) return r32;
  return r64;
}

struct BoxIntegrator {
  const PairPotential& p;
  double half;
  double sigma;
  int q;  // nodes for a panel spanning the whole box

  // Integral of exp(-beta U) over `remaining` free particles with `pos` fixed,
  // including only interactions that involve at least one free particle.
  double free(std::vector<double>& pos, int remaining) const {
    if (remaining == 0) return 1.0;
    // The integrand over this coordinate has kinks wherever it, or a chain of up to
    // `remaining` hard cores starting from it, meets a placed particle or a wall.
    std::vector<double> cuts{-half, half};
    auto add = [&](double c) {
      if (c > -half && c < half) cuts.push_back(c);
    };
    if (sigma > 0.0) {
      for (int k = 1; k <= remaining; ++k) {
        for (double y : pos) {
          add(y - k * sigma);
          add(y + k * sigma);
        }
        if (k < remaining) {
          add(-half + k * sigma);
          add(half - k * sigma);
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               cuts.end());
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      double a = cuts[k], b = cuts[k + 1];
      if (b - a <= 0.0) continue;
      double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
      // Node count follows panel width; four nodes integrate the hard-rod pieces exactly.
      const Rule& r = rule(std::max(4, static_cast<int>(std::ceil(q * rad / half))));
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        double x = mid + rad * r.x[i];
        double fac = 1.0;
        for (double y : pos) {
          fac *= boltzmann_at(p, x - y);
          if (fac == 0.0) break;
        }
        if (fac == 0.0) continue;
        pos.push_back(x);
        acc += rad * r.w[i] * fac * free(pos, remaining - 1);
        pos.pop_back();
      }
    }
    return acc;
  }
};

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// sum_{N=m}^{N_cap} z^N/(N-m)! * int exp(-beta U) over N-m free particles, with `points` fixed.
double weighted_sum(const PairPotential& p, double mu, const BoxSpec& box,
                    const std::vector<double>& points) {
  const double z = std::exp(p.beta * mu);
  const int m = static_cast<int>(points.size());
  double fixed = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) fixed *= boltzmann_at(p, points[i] - points[j]);
  if (fixed == 0.0) return 0.0;
  const double sigma = p.hardcore_radius.value_or(0.0);
  double total = 0.0;
  for (int N = m; N <= box.N_cap; ++N) {
    BoxIntegrator bi{p, 0.5 * box.L, sigma, N <= 3 ? box.quad_points : box.quad_points_high};
    std::vector<double> pos = points;
    total += std::pow(z, N) / factorial(N - m) * bi.free(pos, N - m);
  }
  total *= fixed;
  if (!std::isfinite(total)) throw std::overflow_error("box quadrature overflow");
  return total;
}

}  // namespace

double box_partition_function(const PairPotential& p, double mu, const BoxSpec& box) {
  box.validate();
  return weighted_sum(p, mu, box, {});
}

double box_correlation(const PairPotential& p, double mu, const BoxSpec& box,
                       const std::vector<double>& points) {
  box.validate();
  if (points.empty() || points.size() > 3) throw std::invalid_argument("box_correlation: 1..3 points");
  for (double x : points)
    if (std::abs(x) > 0.5 * box.L) throw std::invalid_argument("box_correlation: point outside the box");
  return weighted_sum(p, mu, box, points) / box_partition_function(p, mu, box);
}

std::vector<double> box_correlations(const PairPotential& p, double mu, const BoxSpec& box,
                                     const std::vector<double>& points) {
  const int m = static_cast<int>(points.size());
  if (m < 1 || m > 3) throw std::invalid_argument("box_correlations: 1..3 points");
  const double xi = box_partition_function(p, mu, box);
  std::vector<double> out(std::size_t{1} << m, 0.0);
  for (std::uint32_t S = 1; S < (1u << m); ++S) {
    std::vector<double> sub;
    for (int i = 0; i < m; ++i)
      if (S >> i & 1u) sub.push_back(points[i]);
    out[S] = weighted_sum(p, mu, box, sub) / xi;
  }
  return out;
}

double box_tail_bound(const PairPotential& p, double mu, const BoxSpec& box, double B) {
  const int n = box.N_cap + 1;
  const double z = std::exp(p.beta * mu);
  return std::pow(z * box.L, n) * std::exp(p.beta * B * n * n) / factorial(n);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

FDReport fd_check(const std::string& label, const std::function<double(double)>& f, double df,
                  const std::vector<double>& t_ladder, double claimed_order) {
  FDReport r;
  r.label = label;
  r.claimed_order = claimed_order;
  r.t = t_ladder;
  const double f0 = f(0.0);
  double scale = std::abs(f0);
  for (double t : t_ladder) {
    double fp = f(t), fm = f(-t);
    r.remainder.push_back(std::abs(fp - f0 - t * df));
    r.central_error.push_back(std::abs((fp - fm) / (2.0 * t) - df));
    scale = std::max({scale, std::abs(fp), std::abs(t * df)});
  }
  const double floor = 1e-13 * std::max(scale, 1e-300);
  bool all_tiny = std::all_of(r.remainder.begin(), r.remainder.end(), [&](double e) { return e <= floor; });
  bool any_zero = std::any_of(r.remainder.begin(), r.remainder.end(), [](double e) { return e <= 0.0; });
  if (all_tiny) {
    r.slope = claimed_order;
    r.pass = true;
    return r;
  }
  r.slope = any_zero ? 0.0 : loglog_slope(r.t, r.remainder);
  r.pass = r.slope >= claimed_order - 0.1;
  return r;
}

TonksState tonks_from_z(double z, double sigma) {
  if (!(z > 0.0) || !(sigma > 0.0)) throw std::invalid_argument("tonks: z and sigma must be positive");
  TonksState s;
  s.z = z;
  s.beta_p = boost::math::lambert_w0(z * sigma) / sigma;
  s.rho = s.beta_p / (1.0 + s.beta_p * sigma);
  return s;
}

TonksState tonks_from_rho(double rho, double sigma) {
  if (!(rho > 0.0) || !(rho * sigma < 1.0)) throw std::invalid_argument("tonks: need 0 < rho sigma < 1");
  TonksState s;
  s.rho = rho;
  s.beta_p = rho / (1.0 - rho * sigma);
  s.z = s.beta_p * std::exp(s.beta_p * sigma);
  return s;
}

}  // namespace henderson
