#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "henderson/grid.hpp"
#include "henderson/potentials.hpp"

namespace henderson::testing {

// Smooth even probe vector with envelope m, zero where mask == 0.
inline GridFunction probe(const GridSpec& g, std::mt19937_64& rng, const Majorant& m,
                          const GridFunction* mask = nullptr) {
  std::normal_distribution<double> N(0.0, 1.0);
  double a[4];
  for (double& x : a) x = N(rng);
  GridFunction v = GridFunction::sample(g, [&](double x) {
    return m(x) * (a[0] + a[1] * std::cos(0.7 * x) + a[2] * std::cos(1.9 * x) + a[3] * std::exp(-x * x));
  });
  if (mask)
    for (int k = 0; k < g.M(); ++k)
      if ((*mask)[k] == 0.0) v[k] = 0.0;
  return v;
}

// Even random vector on the grid, independent node values.
inline GridFunction random_even(const GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  GridFunction v(g);
  const int M = g.M();
  for (int k = 0; k <= M / 2; ++k) v[k] = v[M - 1 - k] = U(rng);
  return v;
}

inline double max_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace henderson::testing
