#include "henderson/entropy.hpp"

#include <cmath>

namespace henderson {

void Target::validate() const {
  if (!(rho_star > 0.0)) throw std::invalid_argument("target density must be positive");
  for (int k = 0; k < rho2_star.size(); ++k)
    if (rho2_star[k] < 0.0) throw std::invalid_argument("target pair correlation is negative");
  if (!rho2_star.is_even(1e-12 * rho2_star.max_abs()))
    throw std::invalid_argument("target pair correlation is not even");
}

double core_tolerance(const Target& t) { return 1e-10 * t.rho_star * t.rho_star; }

JacobianKernels jacobian_kernels(const ThermoState& s) {
  if (!s.tables || !s.tables->has_K4)
    throw std::invalid_argument("jacobian_kernels: state tables were built without K4");
  const GridSpec& g = s.omega2.spec();
  return {sum_orders(s.series.omega3, g), sum_orders(s.series.K4, g)};
}

double interaction_energy(const PairPotential& p, const Target& t) {
  require_same(p.spec(), t.rho2_star.spec(), "interaction_energy");
  const double tol = core_tolerance(t);
  GridFunction integrand(p.spec());
  const int e = p.edge_node();
  for (int k = 0; k < integrand.size(); ++k) {
    double b = p.boltzmann[k];
    // Edge nodes store half of b; the energy uses the outside value of u.
    if (e >= 0 && (k == e || k == integrand.size() - 1 - e)) b *= 2.0;
    if (b > 0.0) {
      integrand[k] = -std::log(b) / p.beta * t.rho2_star[k];
    } else if (t.rho2_star[k] >= tol) {
      throw InfiniteEnergy("target pair correlation overlaps the hard core");
    }
  }
  return 0.5 * integrate(integrand);
}

EntropyEval phi(const PairPotential& p, const Target& t, const ClusterTruncation& tr, bool with_K4) {
  t.validate();
  require_same(p.spec(), t.rho2_star.spec(), "phi");
  EntropyEval e;
  e.energy = interaction_energy(p, t);
  MuStarResult m = solve_mu_star(make_tables(p, tr, with_K4), p, t.rho_star);
  e.mu_star = m.mu_star;
  e.state = std::move(m.state);
  e.phi = e.state.beta_p / p.beta - e.mu_star * t.rho_star + e.energy;
  e.grad = GridFunction(p.spec());
  for (int k = 0; k < e.grad.size(); ++k)
    if (e.state.mask[k] > 0.0) e.grad[k] = 0.5 * (t.rho2_star[k] - e.state.rho2[k]);
  return e;
}

GridFunction grad_phi(const PairPotential& p, const Target& t, const ClusterTruncation& tr) {
  return phi(p, t, tr).grad;
}

GridFunction henderson_F(const PairPotential& p, double rho_star, const ClusterTruncation& tr) {
  return solve_mu_star(p, rho_star, tr).state.rho2;
}

namespace {

GridFunction masked(const GridFunction& v, const GridFunction& mask) {
  GridFunction r(v.spec());
  for (int k = 0; k < v.size(); ++k) r[k] = mask[k] > 0.0 ? v[k] : 0.0;
  return r;
}

// h sum_j wt_j f(x_i - x_j) v_j with trapezoid weights wt_j, the quadrature of the
// forward model, so that the convolution terms are exact discrete derivatives.
GridFunction trapezoid_convolve(const GridFunction& f, GridFunction v) {
  v[0] *= 0.5;
  v[v.size() - 1] *= 0.5;
  return convolve(f, v);
}

// Terms shared by both Hessian paths: (a), (b), (d), (e) of the Jacobian.
GridFunction local_terms(const ThermoState& s, const JacobianKernels& k, const GridFunction& vm) {
  const double beta = s.beta;
  const int N = s.n_max;
  const GridSpec& g = vm.spec();
  const ClusterSeries& c = s.series;
  GridFunction out = -beta * hadamard(s.rho2, vm);

  std::vector<GridFunction> conv(static_cast<std::size_t>(N + 1));
  for (int l = 2; l <= N; ++l) conv[l] = trapezoid_convolve(c.omega2[l], vm);
  for (int l = 2; l <= N; ++l) {
    double rho_part = 0.0;
    for (int kk = 1; kk + l <= N; ++kk) rho_part += c.rho[kk];
    if (rho_part != 0.0) out.axpy(-2.0 * beta * rho_part, conv[l]);
  }
  for (int kk = 2; kk <= N; ++kk) {
    GridFunction partial(g);
    bool any = false;
    for (int l = 2; kk + l <= N; ++l) {
      partial += conv[l];
      any = true;
    }
    if (any) out.axpy(-beta, trapezoid_convolve(c.omega2[kk], partial));
  }
  out.axpy(-2.0 * beta, apply_kernel(k.omega3, vm));
  if (k.K4.size() == g.M()) out.axpy(-0.5 * beta, apply_kernel(k.K4, vm));
  return out;
}

}  // namespace

GridFunction apply_F_prime(const ThermoState& s, const JacobianKernels& k, const GridFunction& v,
                           const FPrimeOptions& opt) {
  require_same(s.omega2.spec(), v.spec(), "apply_F_prime");
  const double beta = s.beta, P = s.d_mu_rho;
  const GridFunction vm = masked(v, s.mask);
  if (opt.diagonal_only) return masked(-beta * hadamard(s.rho2, vm), s.mask);

  GridFunction out = local_terms(s, k, vm);
  const GridFunction& a = s.d_mu_omega2;
  const double a_v = opt.corrupt ? inner(s.rho2, vm) : inner(a, vm);
  out.axpy(a_v / (2.0 * P), a);

  if (opt.closure) {
    const double q = s.rho_d_mu_rho;
    GridFunction c_omega = (beta * q / P) * (2.0 * s.omega2 + s.omega3_rowint);
    c_omega.axpy(-2.0 * beta, s.rho_omega2);
    c_omega.axpy(-beta, s.rho_rowint3);
    const double sc = 2.0 * q * q / P - 2.0 * beta * s.rho_cubed - 2.0 * beta * s.rho_sq_int_omega2;
    const double int_v = integrate(vm);
    const double cw_v = inner(c_omega, vm);
    out.axpy(int_v, c_omega);
    for (int i = 0; i < out.size(); ++i) out[i] += cw_v + sc * int_v;
  }
  return masked(out, s.mask);
}

double hessian_form(const ThermoState& s, const JacobianKernels& k, const GridFunction& v,
                    const GridFunction& w) {
  return -0.5 * inner(masked(w, s.mask), apply_F_prime(s, k, v));
}

GridFunction d_u_rho2(const ThermoState& s, const JacobianKernels& k, const GridFunction& w) {
  const double beta = s.beta;
  const GridFunction wm = masked(w, s.mask);
  GridFunction out = local_terms(s, k, wm);
  const double int_w = integrate(wm);
  // Rank-one pieces from the factorized parts of rho3 and rho4 - rho2 rho2.
  out.axpy(-2.0 * beta * int_w, s.rho_omega2);
  out.axpy(-beta * int_w, s.rho_rowint3);
  const double cst = -2.0 * beta * inner(s.rho_omega2, wm) - beta * inner(s.rho_rowint3, wm) -
                     2.0 * beta * s.rho_cubed * int_w - 2.0 * beta * s.rho_sq_int_omega2 * int_w;
  for (int i = 0; i < out.size(); ++i) out[i] += cst;
  return masked(out, s.mask);
}

double hessian_form_direct(const ThermoState& s, const JacobianKernels& k, const GridFunction& v,
                           const GridFunction& w) {
  const GridFunction vm = masked(v, s.mask), wm = masked(w, s.mask);
  return -inner(vm, s.grad_u_rho) * inner(wm, s.grad_u_rho) / s.d_mu_rho -
         0.5 * inner(vm, d_u_rho2(s, k, wm));
}

}  // namespace henderson
