#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "henderson/grid.hpp"

namespace henderson {

// psi0(r) = C (1 + r^2)^(-alpha/2)
struct Majorant {
  double C = 1.0;
  double alpha = 2.0;
  double operator()(double r) const;
};

// Pair potential stored as its Boltzmann factor b = exp(-beta u) on the grid.
// A node that sits exactly on a hard-core edge carries half of the outside
// limit of b, which makes trapezoid sums over hard-core integrands exact.
struct PairPotential {
  double beta = 1.0;
  GridFunction boltzmann;
  std::optional<double> hardcore_radius;
  Majorant majorant;
  std::string core_divergence = "none";

  const GridSpec& spec() const { return boltzmann.spec(); }
  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  // u = -log(b)/beta, +inf where b = 0.
  GridFunction u() const;
  // Index of the grid node on the positive hard-core edge, or -1.
  int edge_node() const;
};

PairPotential ideal_gas(const GridSpec& g, double beta);
PairPotential hard_rod(const GridSpec& g, double beta, double sigma);
// Hard core sigma plus tail -epsilon ((1+sigma^2)/(1+r^2))^(alpha/2) for |r| >= sigma.
// The majorant is the tail envelope, so |u| = psi0 outside the core.
PairPotential lj_type(const GridSpec& g, double beta, double epsilon, double sigma, double alpha);
// Potential from sampled u values (+inf allowed); values at |x| < hardcore are ignored
// and a node on the hard-core edge follows the half-value convention.
PairPotential from_u(const GridFunction& u, double beta, std::optional<double> hardcore,
                     Majorant m = {});
// b -> b exp(-beta v) on b > 0.
PairPotential perturbed(const PairPotential& p, const GridFunction& v, double t = 1.0);
// Pointwise combination u = t u1 + (1-t) u2 on the common non-core region.
PairPotential blend(const PairPotential& p1, const PairPotential& p2, double t);

// Boltzmann factor at an arbitrary separation: 0 inside the core, linear
// interpolation of the (physical, one-sided) values on the grid, 1 beyond R.
double boltzmann_at(const PairPotential& p, double r);

GridFunction mayer(const PairPotential& p, const GridSpec& g);
double v_norm(const GridFunction& v, const Majorant& m);
// Same norm restricted to the nodes where mask > 0. Evenness is checked to the
// absolute tolerance even_tol; a negative value means 1e-10 max|v|. Differences of
// potentials need a tolerance on the scale of the potentials themselves.
double v_norm_masked(const GridFunction& v, const Majorant& m, const GridFunction& mask,
                     double even_tol = -1.0);

struct StabilityEstimate {
  double B = 0.0;
  bool unstable = false;
  long samples = 0;
  std::string method = "random-search+coordinate-descent";
};
StabilityEstimate stability_bound(const PairPotential& p, int n_max, int trials,
                                  std::uint64_t seed = 42);

double c_beta(const PairPotential& p);
// Returns +inf when c_beta = 0.
double gas_phase_mu0(const PairPotential& p, double B);

PairPotential pmf_initial_guess(const GridFunction& rho2_target, double rho_star, double beta,
                                double floor = 1e-12);

}  // namespace henderson
