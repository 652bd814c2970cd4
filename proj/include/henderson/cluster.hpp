#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "henderson/graphs.hpp"
#include "henderson/grid.hpp"
#include "henderson/potentials.hpp"

namespace henderson {

struct ClusterTruncation {
  int n_max = 4;
  void validate() const;
};

enum class KernelMode { parallel, serial_reference };

// Activity-independent integrals of the Ursell functions phi^(n):
//   J[n]      = int phi_n(0, x_2..x_n)                       (J[1] = 1)
//   I[n](x)   = int phi_n(0, x, y_1..y_{n-2})                (I[2] = f)
//   T[n](x,x')= int phi_n(x, 0, x', y_1..y_{n-3})
//   Q[n](x,x')= int dy int phi_n(x, 0, y, x'+y, y_1..y_{n-4})  (symmetrized)
// I[n] is the row integral of T[n] for n >= 3.
struct ClusterTables {
  GridSpec spec;
  int n_max = 0;
  bool has_K4 = false;
  std::vector<double> J;
  std::vector<GridFunction> I;
  std::vector<Kernel2D> T;
  std::vector<Kernel2D> Q;
  // 1 where b > 0, 0 in the hard core.
  GridFunction mask;
};

ClusterTables build_tables(const PairPotential& p, const ClusterTruncation& tr, bool with_K4,
                           KernelMode mode = KernelMode::parallel);

// Integral of phi_n with `externals` points fixed (the first at 0) and n - externals
// internal points integrated over the grid. externals = 1 -> scalar, 2 -> line, 3 -> plane.
struct PhiIntegral {
  int externals = 0;
  double scalar = 0.0;
  GridFunction line;
  Kernel2D plane;
};
PhiIntegral phi_n(const PairPotential& p, int n, int externals,
                  KernelMode mode = KernelMode::parallel);

// Per-order components of the truncated cluster series at activity z; index n
// holds the z^n contribution (already multiplied by z^n).
struct ClusterSeries {
  double z = 0.0;
  int n_max = 0;
  std::vector<double> rho;             // J_n z^n / (n-1)!
  std::vector<double> beta_p;          // J_n z^n / n!
  std::vector<GridFunction> omega2;    // I_n z^n / (n-2)!
  std::vector<Kernel2D> omega3;        // T_n z^n / (n-3)!
  std::vector<Kernel2D> K4;            // Q_n z^n / (n-4)!
};
ClusterSeries cluster_series(const ClusterTables& t, double z);

double sum_orders(const std::vector<double>& c);
GridFunction sum_orders(const std::vector<GridFunction>& c, const GridSpec& g);
Kernel2D sum_orders(const std::vector<Kernel2D>& c, const GridSpec& g);
// Cauchy product truncated at order n_max.
std::vector<double> series_product(const std::vector<double>& a, const std::vector<double>& b,
                                   int n_max);

using OmegaValue = std::variant<double, GridFunction, Kernel2D>;
OmegaValue omega_m(const PairPotential& p, double z, int m, const ClusterTruncation& tr);
double pressure_series(const PairPotential& p, double z, const ClusterTruncation& tr);

// Extended lookup table of the Boltzmann factor for node differences d in [-K, K];
// entries beyond the grid are 1.
struct BoltzmannLookup {
  int K = 0;
  std::vector<double> b;
  BoltzmannLookup(const GridFunction& boltzmann, int K);
  double operator()(int d) const { return b[static_cast<std::size_t>(d + K)]; }
  const double* at(int d) const { return b.data() + (d + K); }
};

}  // namespace henderson
