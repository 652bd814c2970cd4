#pragma once

#include <stdexcept>

#include "henderson/thermo.hpp"

namespace henderson {

struct Target {
  double rho_star = 0.0;
  GridFunction rho2_star;
  void validate() const;
};

class InfiniteEnergy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JacobianKernels {
  Kernel2D omega3;
  Kernel2D K4;
};
// Requires a state whose tables carry K4.
JacobianKernels jacobian_kernels(const ThermoState& s);

struct EntropyEval {
  double phi = 0.0;
  double energy = 0.0;
  double mu_star = 0.0;
  GridFunction grad;
  ThermoState state;
};

// E = 1/2 int u rho2*; hard-core nodes contribute 0 when rho2* < core_tol there.
double interaction_energy(const PairPotential& p, const Target& t);
double core_tolerance(const Target& t);

EntropyEval phi(const PairPotential& p, const Target& t, const ClusterTruncation& tr,
                bool with_K4 = false);
GridFunction grad_phi(const PairPotential& p, const Target& t, const ClusterTruncation& tr);
GridFunction henderson_F(const PairPotential& p, double rho_star, const ClusterTruncation& tr);

struct FPrimeOptions {
  bool diagonal_only = false;  // term (a) only
  bool closure = true;         // truncation-closure correction
  bool corrupt = false;        // fault injection: mismatched rank-one term
};

GridFunction apply_F_prime(const ThermoState& s, const JacobianKernels& k, const GridFunction& v,
                           const FPrimeOptions& opt = {});
// Phi''(v, w) = -1/2 <w, F' v>.
double hessian_form(const ThermoState& s, const JacobianKernels& k, const GridFunction& v,
                    const GridFunction& w);
// Phi''(v, w) = -(1/d_mu rho) <v, grad_u rho><w, grad_u rho> - 1/2 <v, d_u rho2 w>,
// with the fixed-mu derivative d_u rho2 assembled from the Ursell decompositions
// of rho3 and rho4 - rho2 rho2.
double hessian_form_direct(const ThermoState& s, const JacobianKernels& k, const GridFunction& v,
                           const GridFunction& w);
// Fixed-mu derivative of the pair correlation in direction w.
GridFunction d_u_rho2(const ThermoState& s, const JacobianKernels& k, const GridFunction& w);

}  // namespace henderson
