#include <cmath>
#include <random>

#include "doctest.h"
#include "henderson/grid.hpp"
#include "henderson/potentials.hpp"
#include "support.hpp"

using namespace henderson;
using henderson::testing::random_even;

TEST_CASE("grid spec validates and places zero on a node") {
  CHECK_THROWS_AS(GridSpec(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(-1.0, 5), std::invalid_argument);
  GridSpec g(2.0, 9);
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.x(g.center()) == 0.0);
  CHECK(g.node_of(1.5) == 7);
  CHECK(g.node_of(1.3) == -1);
}

TEST_CASE("integrate: constants, odd functions, analytic majorant") {
  GridSpec g(1.0, 41);
  CHECK(integrate(GridFunction(g, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  auto odd = GridFunction::sample(g, [](double x) { return x * std::exp(x * x) + std::sin(3 * x); });
  CHECK(integrate(odd) == 0.0);

  GridSpec big(10.0, 4001);
  Majorant m{1.0, 2.0};
  auto psi = GridFunction::sample(big, [&](double x) { return m(x); });
  CHECK(std::abs(integrate(psi) - 2.0 * std::atan(10.0)) < 1e-6);
}

TEST_CASE("integrate of an even function equals twice the half line minus the centre") {
  GridSpec g(3.0, 61);
  std::mt19937_64 rng(7);
  auto f = random_even(g, rng);
  double half = 0.0;
  for (int k = g.center(); k < g.M(); ++k) half += g.weight(k) * f[k];
  CHECK(integrate(f) == doctest::Approx(2.0 * half - g.h() * f[g.center()]).epsilon(1e-14));
}

TEST_CASE("inner: zero, indicator, symmetry") {
  GridSpec g(2.0, 81);
  auto ind = GridFunction::sample(g, [](double x) { return std::abs(x) < 1.0 ? 1.0 : (std::abs(x) == 1.0 ? 0.5 : 0.0); });
  CHECK(inner(ind, GridFunction(g)) == 0.0);
  // Half-weighted edge nodes contribute 0.25 each to the product.
  CHECK(inner(ind, ind) == doctest::Approx(2.0 - 0.5 * g.h()).epsilon(1e-14));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    auto a = random_even(g, rng), b = random_even(g, rng);
    CHECK(inner(a, b) == inner(b, a));
  }
  CHECK_THROWS(inner(GridFunction(g), GridFunction(GridSpec(2.0, 41))));
}

TEST_CASE("convolve: approximate identity, box self-convolution, commutativity") {
  GridSpec g(6.0, 241);
  auto f = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
  GridFunction delta(g);
  delta[g.center()] = 1.0 / g.h();
  CHECK(henderson::testing::max_diff(convolve(f, delta), f) < 1e-12);

  auto ind = GridFunction::sample(g, [](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; });
  auto tri = convolve(ind, ind);
  CHECK(tri[g.center()] == doctest::Approx(2.0).epsilon(g.h()));
  for (int k = 0; k < g.M(); ++k) {
    if (std::abs(g.x(k)) > 2.0 + 1e-9) CHECK(tri[k] == doctest::Approx(0.0).epsilon(1e-12));
    else CHECK(std::abs(tri[k] - (2.0 - std::abs(g.x(k)))) <= g.h() + 1e-12);
  }

  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    auto a = random_even(g, rng), b = random_even(g, rng);
    CHECK(henderson::testing::max_diff(convolve(a, b), convolve(b, a)) < 1e-12);
  }
}

TEST_CASE("convolve agrees with direct summation on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int M : {3, 5, 17, 101, 255, 511}) {
    GridSpec g(4.0, M);
    GridFunction a(g), b(g);
    for (int k = 0; k < M; ++k) {
      a[k] = U(rng);
      b[k] = U(rng);
    }
    auto fast = convolve(a, b), slow = convolve_direct(a, b);
    double scale = slow.max_abs();
    CHECK(henderson::testing::max_diff(fast, slow) <= 1e-10 * scale);
  }
}

TEST_CASE("apply_kernel: zero, rank one, symmetric kernels") {
  GridSpec g(3.0, 61);
  std::mt19937_64 rng(13);
  auto v = random_even(g, rng), w = random_even(g, rng);
  CHECK(apply_kernel(Kernel2D(g), v).max_abs() == 0.0);

  auto a = random_even(g, rng), b = random_even(g, rng);
  Kernel2D k(g);
  for (int i = 0; i < g.M(); ++i)
    for (int j = 0; j < g.M(); ++j) k(i, j) = a[i] * b[j];
  auto kv = apply_kernel(k, v);
  GridFunction expect = inner(b, v) * a;
  CHECK(henderson::testing::max_diff(kv, expect) < 1e-13);

  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Kernel2D s(g);
  for (int i = 0; i < g.M(); ++i)
    for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = U(rng);
  CHECK(s.is_symmetric());
  double l = inner(w, apply_kernel(s, v)), r = inner(v, apply_kernel(s, w));
  CHECK(std::abs(l - r) <= 1e-12 * std::max(std::abs(l), 1.0));
}

TEST_CASE("tail mass reports the fraction carried near the edge") {
  GridSpec g(10.0, 201);
  auto bump = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(tail_mass(bump) < 1e-30);
  auto flat = GridFunction(g, 1.0);
  CHECK(tail_mass(flat) == doctest::Approx(0.1).epsilon(0.02));
}
