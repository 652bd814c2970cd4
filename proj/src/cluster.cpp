#include "henderson/cluster.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cluster_kernels.hpp"
#include "henderson/diagnostics.hpp"

namespace henderson {

void ClusterTruncation::validate() const {
  if (n_max < 2 || n_max > 5) throw std::invalid_argument("truncation order n_max must be in 2..5");
}

BoltzmannLookup::BoltzmannLookup(const GridFunction& boltzmann, int K_) : K(K_) {
  const GridSpec& g = boltzmann.spec();
  const int c = g.center();
  b.assign(static_cast<std::size_t>(2 * K + 1), 1.0);
  for (int d = -std::min(K, c); d <= std::min(K, c); ++d) b[static_cast<std::size_t>(d + K)] = boltzmann[c + d];
}

namespace detail {

std::vector<double> trapezoid_weights(const GridSpec& g) {
  std::vector<double> w(static_cast<std::size_t>(g.M()));
  for (int k = 0; k < g.M(); ++k) w[k] = g.weight(k);
  return w;
}

namespace {

// Row sums of T pick up rounding-level asymmetry; omega2 must be exactly even.
GridFunction even_part(const GridFunction& v) {
  GridFunction r(v.spec());
  const int M = v.size();
  for (int k = 0; k < M; ++k) r[k] = 0.5 * (v[k] + v[M - 1 - k]);
  return r;
}

// phi_4 of the vertices {0,1,2,3} from its six pair Boltzmann factors.
inline double phi4(double b01, double b02, double b03, double b12, double b13, double b23) {
  double w012 = b01 * b02 * b12;
  double w013 = b01 * b03 * b13;
  double w023 = b02 * b03 * b23;
  double w123 = b12 * b13 * b23;
  return w012 * b03 * b13 * b23 - (w012 + w013 + w023 + w123 + b01 * b23 + b02 * b13 + b03 * b12) +
         2.0 * (b01 + b02 + b03 + b12 + b13 + b23) - 6.0;
}

inline double phi3(double b01, double b02, double b12) {
  return b01 * b02 * b12 - (b01 + b02 + b12) + 2.0;
}

// Fill a symmetric n x n Boltzmann matrix for node positions pos[0..n-1].
inline void fill_matrix(const BoltzmannLookup& B, const int* pos, int n, double* m) {
  for (int a = 0; a < n; ++a) {
    m[a * n + a] = 1.0;
    for (int b = 0; b < a; ++b) m[a * n + b] = m[b * n + a] = B(pos[a] - pos[b]);
  }
}

}  // namespace

Kernel2D T_table_parallel(const BoltzmannLookup& B, const GridSpec& g, int n) {
  const int M = g.M(), c = g.center();
  Kernel2D T(g);
  if (n == 3) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) T(i, j) = phi3(B(i - c), B(i - j), B(j - c));
    return T;
  }
  const std::vector<double> w = trapezoid_weights(g);
  if (n == 4) {
    const double* tcol = B.at(-c);
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < M; ++i) {
      const double bao = B(i - c);
      const double* scol = B.at(-i);
      for (int j = 0; j <= i; ++j) {
        const double bac = B(i - j), boc = B(j - c);
        const double A = bao * bac * boc;
        const double cst = -A + 2.0 * (bao + bac + boc) - 6.0;
        const double* wcol = B.at(-j);
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (int k = 0; k < M; ++k) {
          const double s = scol[k], t = tcol[k], u = wcol[k];
          const double phi = A * s * t * u - bao * s * t - bac * s * u - boc * t * u - bao * u -
                             bac * t - boc * s + 2.0 * (s + t + u) + cst;
          acc += w[k] * phi;
        }
        T(i, j) = acc;
        T(j, i) = acc;
      }
    }
    return T;
  }
  if (n == 5) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < M; ++i) {
      int pos[5];
      double m[25];
      for (int j = 0; j <= i; ++j) {
        double acc = 0.0;
        for (int k = 0; k < M; ++k) {
          double inner = 0.0;
          for (int l = 0; l < M; ++l) {
            pos[0] = i; pos[1] = c; pos[2] = j; pos[3] = k; pos[4] = l;
            fill_matrix(B, pos, 5, m);
            inner += w[l] * ursell_from_boltzmann(5, m);
          }
          acc += w[k] * inner;
        }
        T(i, j) = acc;
        T(j, i) = acc;
      }
    }
    return T;
  }
  throw std::invalid_argument("T table: n must be in 3..5");
}

Kernel2D Q_table_parallel(const BoltzmannLookup& B, const GridSpec& g, int n) {
  const int M = g.M(), c = g.center();
  const std::vector<double> w = trapezoid_weights(g);
  Kernel2D Q(g);
  if (n == 4) {
    const double* b12col = B.at(-c);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i) {
      const double b01 = B(i - c);
      const double* b02col = B.at(-i);
      for (int j = 0; j < M; ++j) {
        const double b23 = B(j - c);
        const double* b03col = B.at(j - c - i);
        const double* b13col = B.at(j - 2 * c);
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (int k = 0; k < M; ++k)
          acc += w[k] * phi4(b01, b02col[k], b03col[k], b12col[k], b13col[k], b23);
        Q(i, j) = acc;
      }
    }
  } else if (n == 5) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < M; ++i) {
      int pos[5];
      double m[25];
      for (int j = 0; j < M; ++j) {
        double acc = 0.0;
        for (int k = 0; k < M; ++k) {
          double inner = 0.0;
          for (int l = 0; l < M; ++l) {
            pos[0] = i; pos[1] = c; pos[2] = k; pos[3] = k + j - c; pos[4] = l;
            fill_matrix(B, pos, 5, m);
            inner += w[l] * ursell_from_boltzmann(5, m);
          }
          acc += w[k] * inner;
        }
        Q(i, j) = acc;
      }
    }
  } else {
    throw std::invalid_argument("Q table: n must be in 4..5");
  }
  Q.symmetrize();
  return Q;
}

}  // namespace detail

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int lookup_extent(const GridSpec& g) { return 3 * (g.M() - 1); }

}  // namespace

ClusterTables build_tables(const PairPotential& p, const ClusterTruncation& tr, bool with_K4,
                           KernelMode mode) {
  tr.validate();
  const GridSpec& g = p.spec();
  const BoltzmannLookup B(p.boltzmann, lookup_extent(g));
  const int N = tr.n_max;
  ClusterTables t;
  t.spec = g;
  t.n_max = N;
  t.has_K4 = with_K4;
  t.J.assign(static_cast<std::size_t>(N + 1), 0.0);
  t.I.assign(static_cast<std::size_t>(N + 1), GridFunction(g));
  t.T.assign(static_cast<std::size_t>(N + 1), Kernel2D());
  t.Q.assign(static_cast<std::size_t>(N + 1), Kernel2D());
  t.mask = GridFunction(g);
  for (int k = 0; k < g.M(); ++k) t.mask[k] = p.boltzmann[k] > 0.0 ? 1.0 : 0.0;

  t.J[1] = 1.0;
  t.I[2] = mayer(p, g);
  t.J[2] = integrate(t.I[2]);
  const bool serial = mode == KernelMode::serial_reference;
  for (int n = 3; n <= N; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    t.T[n] = serial ? detail::T_table_serial(B, g, n) : detail::T_table_parallel(B, g, n);
    t.I[n] = detail::even_part(t.T[n].row_integrals());
    t.J[n] = integrate(t.I[n]);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    diag({{"stage", "T_table"}, {"n", n}, {"graphs", connected_graphs(n).graphs.size()},
          {"seconds", secs}, {"M", g.M()}, {"serial", serial}});
  }
  if (with_K4) {
    for (int n = 4; n <= N; ++n) {
      auto t0 = std::chrono::steady_clock::now();
      t.Q[n] = serial ? detail::Q_table_serial(B, g, n) : detail::Q_table_parallel(B, g, n);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      diag({{"stage", "Q_table"}, {"n", n}, {"graphs", connected_graphs(n).graphs.size()},
            {"seconds", secs}, {"M", g.M()}, {"serial", serial}});
    }
  }
  return t;
}

PhiIntegral phi_n(const PairPotential& p, int n, int externals, KernelMode mode) {
  if (n < 2 || n > 5) throw std::invalid_argument("phi_n: n must be in 2..5");
  if (externals < 1 || externals > 3 || externals > n)
    throw std::invalid_argument("phi_n: externals must be in 1..min(3,n)");
  if (n - externals > 3) throw std::invalid_argument("phi_n: more than 3 internal vertices");
  const GridSpec& g = p.spec();
  const BoltzmannLookup B(p.boltzmann, lookup_extent(g));
  PhiIntegral r;
  r.externals = externals;
  const bool serial = mode == KernelMode::serial_reference;
  auto line = [&]() -> GridFunction {
    if (n == 2) return mayer(p, g);
    if (serial) return detail::I_line_serial(B, g, n);
    return detail::even_part(detail::T_table_parallel(B, g, n).row_integrals());
  };
  if (externals == 3) {
    r.plane = serial ? detail::T_table_serial(B, g, n) : detail::T_table_parallel(B, g, n);
  } else if (externals == 2) {
    r.line = line();
  } else {
    r.scalar = serial ? detail::J_scalar_serial(B, g, n) : integrate(line());
  }
  return r;
}

ClusterSeries cluster_series(const ClusterTables& t, double z) {
  const int N = t.n_max;
  ClusterSeries s;
  s.z = z;
  s.n_max = N;
  s.rho.assign(static_cast<std::size_t>(N + 1), 0.0);
  s.beta_p.assign(static_cast<std::size_t>(N + 1), 0.0);
  s.omega2.assign(static_cast<std::size_t>(N + 1), GridFunction(t.spec));
  s.omega3.assign(static_cast<std::size_t>(N + 1), Kernel2D());
  s.K4.assign(static_cast<std::size_t>(N + 1), Kernel2D());
  double zn = 1.0;
  for (int n = 1; n <= N; ++n) {
    zn *= z;
    s.rho[n] = t.J[n] * zn / factorial(n - 1);
    s.beta_p[n] = t.J[n] * zn / factorial(n);
    if (n >= 2) s.omega2[n] = (zn / factorial(n - 2)) * t.I[n];
    if (n >= 3) {
      s.omega3[n] = Kernel2D(t.spec);
      s.omega3[n].axpy(zn / factorial(n - 3), t.T[n]);
    }
    if (n >= 4 && t.has_K4) {
      s.K4[n] = Kernel2D(t.spec);
      s.K4[n].axpy(zn / factorial(n - 4), t.Q[n]);
    }
  }
  return s;
}

double sum_orders(const std::vector<double>& c) {
  double s = 0.0;
  for (double x : c) s += x;
  return s;
}

GridFunction sum_orders(const std::vector<GridFunction>& c, const GridSpec& g) {
  GridFunction s(g);
  for (const auto& x : c)
    if (x.size() == g.M()) s += x;
  return s;
}

Kernel2D sum_orders(const std::vector<Kernel2D>& c, const GridSpec& g) {
  Kernel2D s(g);
  for (const auto& x : c)
    if (x.size() == g.M()) s.axpy(1.0, x);
  return s;
}

std::vector<double> series_product(const std::vector<double>& a, const std::vector<double>& b,
                                   int n_max) {
  std::vector<double> r(static_cast<std::size_t>(n_max + 1), 0.0);
  for (int k = 0; k < static_cast<int>(a.size()) && k <= n_max; ++k)
    for (int l = 0; l < static_cast<int>(b.size()) && k + l <= n_max; ++l) r[k + l] += a[k] * b[l];
  return r;
}

namespace {

void check_gas_phase(const PairPotential& p, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("activity z must be positive");
  double mu0 = gas_phase_mu0(p, stability_bound(p, 4, 2000).B);
  if (std::isfinite(mu0) && std::log(z) / p.beta > mu0)
    warn("activity above the gas-phase bound", {{"z", z}, {"z0", std::exp(p.beta * mu0)}});
}

}  // namespace

OmegaValue omega_m(const PairPotential& p, double z, int m, const ClusterTruncation& tr) {
  if (m < 1 || m > 4) throw std::invalid_argument("omega_m: m must be in 1..4");
  check_gas_phase(p, z);
  ClusterTables t = build_tables(p, tr, m == 4);
  ClusterSeries s = cluster_series(t, z);
  switch (m) {
    case 1: return sum_orders(s.rho);
    case 2: return sum_orders(s.omega2, t.spec);
    case 3: return sum_orders(s.omega3, t.spec);
    default: return sum_orders(s.K4, t.spec);
  }
}

double pressure_series(const PairPotential& p, double z, const ClusterTruncation& tr) {
  check_gas_phase(p, z);
  return sum_orders(cluster_series(build_tables(p, tr, false), z).beta_p);
}

}  // namespace henderson
