#pragma once

#include <memory>

#include "henderson/cluster.hpp"

namespace henderson {

// Forward thermodynamics at fixed (mu, u). Series products (rho^2, rho*omega2, ...)
// are Cauchy products truncated at n_max; pair_correlation and grad_u_rho are set
// to zero where b = 0.
struct ThermoState {
  double beta = 1.0;
  double mu = 0.0;
  double z = 0.0;
  int n_max = 0;
  double rho = 0.0;
  double beta_p = 0.0;
  double d_mu_rho = 0.0;
  double int_omega2 = 0.0;
  GridFunction omega2;
  GridFunction rho2;
  GridFunction d_mu_omega2;
  GridFunction grad_u_rho;
  GridFunction omega3_rowint;
  GridFunction mask;
  ClusterSeries series;
  std::shared_ptr<const ClusterTables> tables;

  // Truncated products used by the Jacobian.
  GridFunction rho_omega2;      // [rho omega2]
  GridFunction rho_rowint3;     // [rho r], r = int omega3(x,0,x') dx'
  double rho_cubed = 0.0;       // [rho^3]
  double rho_sq_int_omega2 = 0.0;  // [rho^2 J], J = int omega2
  double rho_d_mu_rho = 0.0;    // [rho d_mu rho]
};

std::shared_ptr<const ClusterTables> make_tables(const PairPotential& p, const ClusterTruncation& tr,
                                                 bool with_K4);
ThermoState forward(const PairPotential& p, double mu, const ClusterTruncation& tr);
ThermoState forward(std::shared_ptr<const ClusterTables> t, double beta, double mu);

GridFunction pair_correlation(const ThermoState& s);

struct MuStarResult {
  double mu_star = 0.0;
  ThermoState state;
  int iterations = 0;
};

class InfeasibleDensity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scalar Newton on rho(mu) - rho_star, safeguarded by a bisection bracket.
MuStarResult solve_mu_star(const PairPotential& p, double rho_star, const ClusterTruncation& tr,
                           double tol = 1e-13);
MuStarResult solve_mu_star(std::shared_ptr<const ClusterTables> t, const PairPotential& p,
                           double rho_star, double tol = 1e-13);

double mu_star_derivative(const ThermoState& s, const GridFunction& v);

struct KSReport {
  double m0 = 0.0;       // |rho - rhs| for the one-point equation
  double m1 = 0.0;       // sup |rho2(x) - rhs(x)| over |x| <= window
  double window = 0.0;
  double rho = 0.0;
  double rho2_scale = 0.0;
};
KSReport ks_residual(const PairPotential& p, double mu, const ClusterTruncation& tr);

}  // namespace henderson
