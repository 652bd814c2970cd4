#pragma once

#include <functional>
#include <string>
#include <vector>

#include "henderson/entropy.hpp"

namespace henderson {

struct IMCConfig {
  int max_iters = 30;
  double grad_tol = 1e-6;
  // Keep iterating after grad_tol is met, until sup|grad| < polish_tol or no
  // further decrease is possible. 0 disables polishing.
  double polish_tol = 0.0;
  double lambda0 = -1.0;  // < 0: 1e-3 * beta * max rho2 of the starting state
  double lambda_factor = 0.1;
  double damping = 1.0;
  double backtrack = 0.5;
  int max_backtracks = 30;
  double cg_tol = 1e-10;
  int cg_max = 500;
  bool diagonal_only = false;
  ClusterTruncation trunc;
  void validate() const;
};

struct IMCIterate {
  int iter = 0;
  double mu_star = 0.0;
  double grad_norm = 0.0;
  double residual_norm = 0.0;
  double step_len = 0.0;
  double lambda = 0.0;
  double v_norm_update = 0.0;
  int cg_iters = 0;
  double phi = 0.0;
};

struct NewtonStep {
  GridFunction v;
  int cg_iters = 0;
  double lambda = 0.0;
  double relative_residual = 0.0;
  int escalations = 0;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solves (-F' + lambda I) v = F(u) - rho2* by conjugate gradients on b > 0.
NewtonStep newton_step(const ThermoState& s, const JacobianKernels& k, const Target& t,
                       const IMCConfig& cfg, double lambda);

struct IMCResult {
  std::vector<IMCIterate> iterates;
  PairPotential final_potential;
  bool converged = false;
  int iterations_to_tol = -1;  // first iteration index with sup|grad| < grad_tol
  std::string status;
};

using IMCObserver = std::function<void(const IMCIterate&, const EntropyEval&)>;

IMCResult run_imc(const PairPotential& p0, const Target& t, const IMCConfig& cfg,
                  const IMCObserver& observer = {});

}  // namespace henderson
