#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "henderson/entropy.hpp"
#include "henderson/oracle.hpp"
#include "support.hpp"

using namespace henderson;
using henderson::testing::max_diff;
using henderson::testing::probe;

namespace {

const ClusterTruncation kTrunc{4};

Target target_from(const PairPotential& p, double rho_star) {
  Target t;
  t.rho_star = rho_star;
  t.rho2_star = henderson_F(p, rho_star, kTrunc);
  return t;
}

Target ideal_target(const GridSpec& g, double rho_star, const GridFunction* g_shape = nullptr) {
  Target t;
  t.rho_star = rho_star;
  t.rho2_star = GridFunction(g, rho_star * rho_star);
  if (g_shape)
    for (int k = 0; k < g.M(); ++k) t.rho2_star[k] *= 1.0 + (*g_shape)[k];
  return t;
}

struct Setup {
  PairPotential p;
  Target t;
  EntropyEval e;
  JacobianKernels k;
};

Setup lj_setup(const GridSpec& g) {
  Setup s;
  s.t = target_from(lj_type(g, 1.0, 0.3, 1.0, 6.0), 0.05);
  s.p = lj_type(g, 1.0, 0.35, 1.0, 6.0);
  s.e = phi(s.p, s.t, kTrunc, true);
  s.k = jacobian_kernels(s.e.state);
  return s;
}

}  // namespace

TEST_CASE("interaction energy examples") {
  GridSpec g(4.0, 161);
  CHECK(interaction_energy(ideal_gas(g, 1.0), ideal_target(g, 0.1)) == 0.0);

  auto step = GridFunction::sample(g, [](double x) { return std::abs(x) < 1.0 ? 1.0 : 0.0; });
  // Node values at x = +-1 are 0, so the trapezoid integral of the step is exactly 2 - h.
  double E = interaction_energy(from_u(step, 1.0, std::nullopt), ideal_target(g, 0.1));
  CHECK(E == doctest::Approx(0.5 * 0.01 * (2.0 - g.h())).epsilon(1e-13));
  auto fine = GridSpec(4.0, 4001);
  auto step_fine = GridFunction::sample(fine, [](double x) { return std::abs(x) < 1.0 ? 1.0 : 0.0; });
  CHECK(interaction_energy(from_u(step_fine, 1.0, std::nullopt), ideal_target(fine, 0.1)) ==
        doctest::Approx(0.01).epsilon(2e-3));

  auto rod = hard_rod(g, 1.0, 1.0);
  Target cored = ideal_target(g, 0.1);
  for (int k = 0; k < g.M(); ++k)
    if (rod.boltzmann[k] == 0.0) cored.rho2_star[k] = 0.0;
  CHECK(interaction_energy(rod, cored) == 0.0);
  auto lj = lj_type(g, 1.0, 0.3, 1.0, 6.0);
  double e_lj = interaction_energy(lj, cored);
  CHECK(std::isfinite(e_lj));
  CHECK(e_lj < 0.0);
  CHECK_THROWS_AS(interaction_energy(rod, ideal_target(g, 0.1)), InfiniteEnergy);
  cored.rho2_star[g.center()] = 0.5 * core_tolerance(cored);
  CHECK_NOTHROW(interaction_energy(rod, cored));
}

TEST_CASE("entropy functional: ideal gas closed form") {
  GridSpec g(4.0, 161);
  auto e = phi(ideal_gas(g, 1.0), ideal_target(g, 0.05), kTrunc);
  CHECK(e.phi == doctest::Approx(0.05 - 0.05 * std::log(0.05)).epsilon(1e-12));
  CHECK(e.phi == doctest::Approx(0.19979).epsilon(1e-5));
  CHECK(e.mu_star == doctest::Approx(std::log(0.05)).epsilon(1e-13));
  CHECK(e.grad.max_abs() < 1e-16);
}

TEST_CASE("gradient examples") {
  GridSpec g(6.0, 121);
  auto shape = GridFunction::sample(g, [](double x) { return 0.2 * std::exp(-x * x); });
  auto grad = grad_phi(ideal_gas(g, 1.0), ideal_target(g, 0.05, &shape), kTrunc);
  for (int k = 0; k < g.M(); ++k) CHECK(std::abs(grad[k] - 0.5 * 0.0025 * shape[k]) < 1e-17);
  CHECK(grad.is_even(0.0));

  GridSpec gl(8.0, 161);
  auto u_star = lj_type(gl, 1.0, 0.3, 1.0, 6.0);
  auto t = target_from(u_star, 0.05);
  auto self = phi(u_star, t, kTrunc);
  CHECK(self.grad.max_abs() < 1e-14);

  // F(u) = rho2* - 2 grad Phi(u).
  auto other = lj_type(gl, 1.0, 0.35, 1.0, 6.0);
  auto F = henderson_F(other, 0.05, kTrunc);
  auto rebuilt = t.rho2_star - 2.0 * grad_phi(other, t, kTrunc);
  CHECK(max_diff(F, rebuilt) < 1e-15);

  // Minimality at the self-consistent potential.
  std::mt19937_64 rng(19);
  for (int i = 0; i < 5; ++i) {
    auto v = probe(gl, rng, u_star.majorant, &self.state.mask);
    v *= 0.05 / v_norm(v, u_star.majorant);
    CHECK(phi(perturbed(u_star, v, 1.0), t, kTrunc).phi > self.phi);
  }
}

TEST_CASE("gradient finite-difference slope") {
  // R = 8 leaves a 1e-4 relative first-order mismatch from the finite window.
  GridSpec g(12.0, 241);
  auto s = lj_setup(g);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 3; ++i) {
    auto v = probe(g, rng, s.p.majorant, &s.e.state.mask);
    v *= 1.0 / v_norm(v, s.p.majorant);
    auto f = [&](double t) { return phi(perturbed(s.p, v, t), s.t, kTrunc).phi; };
    auto rep = fd_check("grad_phi", f, inner(v, s.e.grad), {1e-2, 1e-3, 1e-4}, 2.0);
    CHECK(rep.slope >= 1.9);
    CHECK(rep.pass);
  }
}

TEST_CASE("Henderson operator examples") {
  GridSpec g(4.0, 161);
  auto F0 = henderson_F(ideal_gas(g, 1.0), 0.05, kTrunc);
  for (int k = 0; k < g.M(); ++k) CHECK(F0[k] == doctest::Approx(0.0025).epsilon(1e-13));

  const double rho = 1e-3;
  auto rod = hard_rod(g, 1.0, 1.0);
  auto F = henderson_F(rod, rho, kTrunc);
  for (int k = 0; k < g.M(); ++k) {
    double lead = rho * rho * rod.boltzmann[k];
    CHECK(std::abs(F[k] - lead) <= 3.0 * rho * rho * rho);
  }
}

TEST_CASE("Jacobian examples") {
  GridSpec g(6.0, 121);
  auto e = phi(ideal_gas(g, 1.0), ideal_target(g, 0.05), kTrunc, true);
  auto k = jacobian_kernels(e.state);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 5; ++i) {
    auto v = henderson::testing::random_even(g, rng);
    auto Fv = apply_F_prime(e.state, k, v);
    CHECK(max_diff(Fv, -0.0025 * v) < 1e-15);
  }
  auto no_k4 = phi(ideal_gas(g, 1.0), ideal_target(g, 0.05), kTrunc, false);
  CHECK_THROWS(jacobian_kernels(no_k4.state));
}

TEST_CASE("Jacobian finite-difference order") {
  GridSpec g(8.0, 161);
  auto s = lj_setup(g);
  std::mt19937_64 rng(37);
  auto v = probe(g, rng, s.p.majorant, &s.e.state.mask);
  auto F0 = henderson_F(s.p, s.t.rho_star, kTrunc);
  auto Fv = apply_F_prime(s.e.state, s.k, v);
  std::vector<double> ts{1e-2, 5e-3, 2.5e-3}, rem;
  for (double t : ts) {
    auto Ft = henderson_F(perturbed(s.p, v, t), s.t.rho_star, kTrunc);
    auto r = Ft - F0;
    r.axpy(-t, Fv);
    rem.push_back(r.max_abs());
  }
  CHECK(loglog_slope(ts, rem) >= 1.9);

  // Without the truncation closure the remainder is first order.
  FPrimeOptions open;
  open.closure = false;
  auto Fv_open = apply_F_prime(s.e.state, s.k, v, open);
  rem.clear();
  for (double t : ts) {
    auto r = henderson_F(perturbed(s.p, v, t), s.t.rho_star, kTrunc) - F0;
    r.axpy(-t, Fv_open);
    rem.push_back(r.max_abs());
  }
  CHECK(loglog_slope(ts, rem) < 1.5);
}

TEST_CASE("Jacobian symmetry and semidefiniteness") {
  GridSpec g(8.0, 161);
  auto s = lj_setup(g);
  std::mt19937_64 rng(41);
  const double scale = s.e.state.beta * s.e.state.rho2.max_abs();
  for (int i = 0; i < 20; ++i) {
    auto v = probe(g, rng, s.p.majorant, &s.e.state.mask);
    auto w = probe(g, rng, s.p.majorant, &s.e.state.mask);
    double wFv = inner(w, apply_F_prime(s.e.state, s.k, v));
    double vFw = inner(v, apply_F_prime(s.e.state, s.k, w));
    CHECK(std::abs(wFv - vFw) <= 1e-8 * std::max(std::abs(wFv), std::abs(vFw)));
    double vFv = inner(v, apply_F_prime(s.e.state, s.k, v));
    CHECK(vFv <= 1e-8 * scale * inner(v, v));
    CHECK(hessian_form(s.e.state, s.k, v, v) >= -1e-8 * scale * inner(v, v));
  }

  FPrimeOptions bad;
  bad.corrupt = true;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    auto v = probe(g, rng, s.p.majorant, &s.e.state.mask);
    auto w = probe(g, rng, s.p.majorant, &s.e.state.mask);
    double a = inner(w, apply_F_prime(s.e.state, s.k, v, bad));
    double b = inner(v, apply_F_prime(s.e.state, s.k, w, bad));
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
  }
  CHECK(worst > 1e-6);
}

TEST_CASE("Hessian: two evaluation paths agree") {
  GridSpec g(8.0, 161);
  auto s = lj_setup(g);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 10; ++i) {
    auto v = probe(g, rng, s.p.majorant, &s.e.state.mask);
    auto w = probe(g, rng, s.p.majorant, &s.e.state.mask);
    double a = hessian_form(s.e.state, s.k, v, w), b = hessian_form_direct(s.e.state, s.k, v, w);
    CHECK(std::abs(a - b) < 1e-6 * std::abs(a));
  }
}

TEST_CASE("Hessian: bilinearity") {
  GridSpec g(8.0, 161);
  auto s = lj_setup(g);
  std::mt19937_64 rng(47);
  auto v1 = probe(g, rng, s.p.majorant, &s.e.state.mask);
  auto v2 = probe(g, rng, s.p.majorant, &s.e.state.mask);
  auto w = probe(g, rng, s.p.majorant, &s.e.state.mask);
  const double a = -1.7;
  auto lhs = hessian_form(s.e.state, s.k, a * v1 + v2, w);
  auto rhs = a * hessian_form(s.e.state, s.k, v1, w) + hessian_form(s.e.state, s.k, v2, w);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("Hessian: ideal gas against a finite difference of the gradient") {
  // d/dt <w, grad Phi(t v)> at t = 0 evaluates Phi''(v, w) independently of F'.
  GridSpec g(6.0, 121);
  const double rho = 0.05, beta = 1.0;
  auto p = ideal_gas(g, beta);
  auto t = ideal_target(g, rho);
  auto e = phi(p, t, kTrunc, true);
  auto k = jacobian_kernels(e.state);
  std::mt19937_64 rng(53);
  Majorant m{1.0, 4.0};
  for (int i = 0; i < 5; ++i) {
    auto v = probe(g, rng, m), w = probe(g, rng, m);
    const double d = 1e-4;
    double fd = (inner(w, grad_phi(perturbed(p, v, d), t, kTrunc)) -
                 inner(w, grad_phi(perturbed(p, v, -d), t, kTrunc))) / (2.0 * d);
    double closed = 0.5 * beta * rho * rho * inner(v, w);
    double with_rank_one = closed - beta * rho * rho * rho * integrate(v) * integrate(w);
    CHECK(hessian_form(e.state, k, v, w) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(std::abs(fd - closed) < 1e-6 * std::abs(closed));
    // The extra rank-one term is cancelled by the fixed-mu derivative of rho2.
    CHECK(std::abs(fd - with_rank_one) > 1e-2 * std::abs(closed));
  }
}

TEST_CASE("entropy functional is convex along segments") {
  GridSpec g(8.0, 161);
  auto t = target_from(lj_type(g, 1.0, 0.3, 1.0, 6.0), 0.04);
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 4; ++i) {
    auto p1 = lj_type(g, 1.0, 0.4 * U(rng), 1.0, 4.0 + 4.0 * U(rng));
    auto p2 = lj_type(g, 1.0, 0.4 * U(rng), 1.0, 4.0 + 4.0 * U(rng));
    double f1 = phi(p1, t, kTrunc).phi, f2 = phi(p2, t, kTrunc).phi;
    for (double s : {0.25, 0.5, 0.75}) {
      double mid = phi(blend(p1, p2, s), t, kTrunc).phi;
      CHECK(mid < s * f1 + (1.0 - s) * f2);
    }
  }
}
