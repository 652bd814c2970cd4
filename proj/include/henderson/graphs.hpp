#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace henderson {

// Connected labeled graphs on n vertices. Each graph is a bitmask over `pairs`.
struct GraphSet {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::uint32_t> graphs;
};

GraphSet connected_graphs(int n);
bool is_connected(int n, const std::vector<std::pair<int, int>>& pairs, std::uint32_t mask);

// Set partitions of {0..n-1}: each block is a vertex bitmask.
std::vector<std::vector<std::uint32_t>> set_partitions(int n);

// phi^(n) from the n x n row-major matrix of pair Boltzmann factors,
// via the subset recursion phi(S) = W(S) - sum_{min S in T, T != S} phi(T) W(S \ T).
double ursell_from_boltzmann(int n, const double* b);
// Reference: sum over connected graphs of products of f = b - 1.
double ursell_graph_sum(const GraphSet& gs, const double* b);

// Moebius inversion over set partitions. rho[S] holds rho^(|S|) at the points of
// subset S (bitmask over m points, rho[0] unused); returns omega[S] for every S.
std::vector<double> ursell_from_correlations(const std::vector<double>& rho, int m);

}  // namespace henderson
