#include "henderson/imc.hpp"

#include <cmath>

#include "henderson/diagnostics.hpp"

namespace henderson {

void IMCConfig::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("imc.grad_tol must be positive");
  if (!(lambda_factor > 0.0 && lambda_factor <= 1.0))
    throw std::invalid_argument("imc.lambda_factor must be in (0,1]");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("imc.damping must be in (0,1]");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("imc.backtrack must be in (0,1)");
  if (max_iters < 0) throw std::invalid_argument("imc.max_iters must be >= 0");
  trunc.validate();
}

namespace {

double sup_norm(const GridFunction& g) { return g.max_abs(); }

GridFunction masked(const GridFunction& v, const GridFunction& mask) {
  GridFunction r(v.spec());
  for (int k = 0; k < v.size(); ++k) r[k] = mask[k] > 0.0 ? v[k] : 0.0;
  return r;
}

// CG arithmetic (FFT convolutions in particular) breaks exact evenness at rounding level.
GridFunction even_part(const GridFunction& v) {
  GridFunction r(v.spec());
  const int M = v.size();
  for (int k = 0; k < M; ++k) r[k] = 0.5 * (v[k] + v[M - 1 - k]);
  return r;
}

}  // namespace

NewtonStep newton_step(const ThermoState& s, const JacobianKernels& k, const Target& t,
                       const IMCConfig& cfg, double lambda) {
  GridFunction rhs = s.rho2 - t.rho2_star;
  rhs = masked(rhs, s.mask);
  const double bnorm = std::sqrt(inner(rhs, rhs));
  FPrimeOptions opt;
  opt.diagonal_only = cfg.diagonal_only;
  NewtonStep out;
  out.lambda = lambda;
  if (bnorm == 0.0) {
    out.v = GridFunction(rhs.spec());
    return out;
  }
  for (int esc = 0; esc <= 5; ++esc) {
    auto A = [&](const GridFunction& x) {
      GridFunction y = apply_F_prime(s, k, x, opt);
      y *= -1.0;
      y.axpy(out.lambda, masked(x, s.mask));
      return y;
    };
    GridFunction x(rhs.spec()), r = rhs, p = rhs;
    double rr = inner(r, r);
    bool ok = false;
    int it = 0;
    for (; it < cfg.cg_max; ++it) {
      if (std::sqrt(rr) <= cfg.cg_tol * bnorm) {
        ok = true;
        break;
      }
      GridFunction Ap = A(p);
      double pAp = inner(p, Ap);
      if (!(pAp > 0.0)) break;
      double alpha = rr / pAp;
      x.axpy(alpha, p);
      r.axpy(-alpha, Ap);
      double rr_new = inner(r, r);
      GridFunction pn = r;
      pn.axpy(rr_new / rr, p);
      p = std::move(pn);
      rr = rr_new;
    }
    out.cg_iters += it;
    // True residual of the regularized system.
    GridFunction res = rhs - A(x);
    out.relative_residual = std::sqrt(inner(res, res)) / bnorm;
    if (ok || out.relative_residual <= cfg.cg_tol) {
      out.v = even_part(x);
      return out;
    }
    diag({{"stage", "cg_escalation"}, {"lambda", out.lambda}, {"relative_residual", out.relative_residual}});
    out.escalations = esc + 1;
    out.lambda = out.lambda > 0.0 ? 10.0 * out.lambda : 1e-6 * sup_norm(s.rho2) * s.beta;
  }
  throw SolverFailure("conjugate gradients stagnated after 5 regularization escalations");
}

IMCResult run_imc(const PairPotential& p0, const Target& t, const IMCConfig& cfg,
                  const IMCObserver& observer) {
  cfg.validate();
  t.validate();
  IMCResult res;
  PairPotential p = p0;
  EntropyEval e = phi(p, t, cfg.trunc, true);
  double lambda = cfg.lambda0 >= 0.0 ? cfg.lambda0 : 1e-3 * p.beta * sup_norm(e.state.rho2);

  auto record = [&](int iter, double step, double vnorm, int cg) {
    IMCIterate it;
    it.iter = iter;
    it.mu_star = e.mu_star;
    it.grad_norm = sup_norm(e.grad);
    it.residual_norm = 2.0 * it.grad_norm;
    it.step_len = step;
    it.lambda = lambda;
    it.v_norm_update = vnorm;
    it.cg_iters = cg;
    it.phi = e.phi;
    res.iterates.push_back(it);
    diag({{"stage", "imc"}, {"iter", iter}, {"grad_norm", it.grad_norm}, {"step", step},
          {"lambda", lambda}, {"mu_star", e.mu_star}});
    if (observer) observer(it, e);
    if (res.iterations_to_tol < 0 && it.grad_norm < cfg.grad_tol) res.iterations_to_tol = iter;
  };
  record(0, 0.0, 0.0, 0);

  const double stop_tol = cfg.polish_tol > 0.0 ? std::min(cfg.polish_tol, cfg.grad_tol) : cfg.grad_tol;
  res.status = "max_iters";
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    double g0 = sup_norm(e.grad);
    if (g0 < stop_tol) {
      res.status = "converged";
      break;
    }
    JacobianKernels k = jacobian_kernels(e.state);
    NewtonStep step = newton_step(e.state, k, t, cfg, lambda);
    lambda = step.lambda;
    double s = cfg.damping;
    bool accepted = false;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt, s *= cfg.backtrack) {
      PairPotential trial = perturbed(p, step.v, s);
      EntropyEval et;
      try {
        et = phi(trial, t, cfg.trunc, false);
      } catch (const InfeasibleDensity&) {
        continue;
      }
      if (sup_norm(et.grad) < g0) {
        p = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.status = g0 < cfg.grad_tol ? "converged" : "stalled";
      break;
    }
    e = phi(p, t, cfg.trunc, true);
    GridFunction upd = s * step.v;
    double vn = v_norm_masked(upd, p.majorant, e.state.mask);
    lambda *= cfg.lambda_factor;
    record(iter, s, vn, step.cg_iters);
    if (sup_norm(e.grad) < stop_tol) {
      res.status = "converged";
      break;
    }
  }
  res.converged = res.iterations_to_tol >= 0;
  if (res.status == "max_iters" && res.converged) res.status = "converged";
  res.final_potential = p;
  return res;
}

}  // namespace henderson
