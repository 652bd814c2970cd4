#pragma once

#include <functional>
#include <string>
#include <vector>

#include "henderson/potentials.hpp"

namespace henderson {

// Box [-L/2, L/2]; particle numbers up to N_cap. Integrals are nested composite
// Gauss-Legendre rules with panels broken wherever the integrand can kink: at
// hard-core edges of placed particles, chained hard cores, and the walls.
struct BoxSpec {
  double L = 12.0;
  int N_cap = 4;
  // Nodes for a panel spanning the whole box; narrower panels get proportionally
  // fewer, at least 4.
  int quad_points = 64;       // N <= 3
  int quad_points_high = 24;  // N >= 4
  void validate() const;
};

double box_partition_function(const PairPotential& p, double mu, const BoxSpec& box);
// rho_Lambda^(m) at the given points (m = points.size() in 1..3).
double box_correlation(const PairPotential& p, double mu, const BoxSpec& box,
                       const std::vector<double>& points);
// rho_Lambda^(|S|) at the points of every subset S (bitmask), for use with
// ursell_from_correlations.
std::vector<double> box_correlations(const PairPotential& p, double mu, const BoxSpec& box,
                                     const std::vector<double>& points);
// z^{N+1} L^{N+1} exp(beta B (N+1)^2) / (N+1)! with N = N_cap.
double box_tail_bound(const PairPotential& p, double mu, const BoxSpec& box, double B);

struct FDReport {
  std::string label;
  std::vector<double> t;
  std::vector<double> remainder;     // |f(t) - f(0) - t df|
  std::vector<double> central_error; // |(f(t) - f(-t)) / 2t - df|
  double slope = 0.0;
  double claimed_order = 2.0;
  bool pass = false;
};
// Remainder-order test: PASS iff the log-log slope of the Taylor remainder is at
// least claimed_order - 0.1, or the remainder is at rounding level throughout.
FDReport fd_check(const std::string& label, const std::function<double(double)>& f, double df,
                  const std::vector<double>& t_ladder, double claimed_order = 2.0);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct TonksState {
  double beta_p = 0.0;
  double rho = 0.0;
  double z = 0.0;
};
TonksState tonks_from_z(double z, double sigma = 1.0);
TonksState tonks_from_rho(double rho, double sigma = 1.0);

}  // namespace henderson
