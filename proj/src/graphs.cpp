#include "henderson/graphs.hpp"

#include <stdexcept>

namespace henderson {

bool is_connected(int n, const std::vector<std::pair<int, int>>& pairs, std::uint32_t mask) {
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (!(mask >> e & 1u)) continue;
      auto [i, j] = pairs[e];
      if (frontier >> i & 1u) next |= 1u << j;
      if (frontier >> j & 1u) next |= 1u << i;
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1u;
}

GraphSet connected_graphs(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("connected_graphs: n must be in 1..5");
  GraphSet gs;
  gs.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gs.pairs.emplace_back(i, j);
  const std::uint32_t total = 1u << gs.pairs.size();
  for (std::uint32_t mask = 0; mask < total; ++mask)
    if (is_connected(n, gs.pairs, mask)) gs.graphs.push_back(mask);
  return gs;
}

namespace {

void partitions_rec(int k, int n, std::vector<std::uint32_t>& blocks,
                    std::vector<std::vector<std::uint32_t>>& out) {
  if (k == n) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b] |= 1u << k;
    partitions_rec(k + 1, n, blocks, out);
    blocks[b] &= ~(1u << k);
  }
  blocks.push_back(1u << k);
  partitions_rec(k + 1, n, blocks, out);
  blocks.pop_back();
}

// out[S] = F[S] - sum_{T: min S in T, T proper subset of S} out[T] * F[S \ T], with F[0] = 1.
void connected_part(int n, const double* F, double* out) {
  const std::uint32_t full = (1u << n) - 1u;
  out[0] = 0.0;
  for (std::uint32_t S = 1; S <= full; ++S) {
    const std::uint32_t low = S & (~S + 1u);
    const std::uint32_t rest = S ^ low;
    double val = F[S];
    for (std::uint32_t sub = rest;; sub = (sub - 1u) & rest) {
      std::uint32_t T = sub | low;
      if (T != S) val -= out[T] * F[S ^ T];
      if (sub == 0) break;
    }
    out[S] = val;
  }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> set_partitions(int n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> blocks;
  if (n == 0) return {{}};
  partitions_rec(0, n, blocks, out);
  return out;
}

double ursell_from_boltzmann(int n, const double* b) {
  double W[32], out[32];
  W[0] = 1.0;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t S = 1; S <= full; ++S) {
    int top = 31 - __builtin_clz(S);
    std::uint32_t R = S ^ (1u << top);
    double w = W[R];
    for (int j = 0; j < top; ++j)
      if (R >> j & 1u) w *= b[top * n + j];
    W[S] = w;
  }
  connected_part(n, W, out);
  return out[full];
}

double ursell_graph_sum(const GraphSet& gs, const double* b) {
  double f[10];
  for (std::size_t e = 0; e < gs.pairs.size(); ++e) {
    auto [i, j] = gs.pairs[e];
    f[e] = b[i * gs.n + j] - 1.0;
  }
  double total = 0.0;
  for (std::uint32_t mask : gs.graphs) {
    double prod = 1.0;
    for (std::size_t e = 0; e < gs.pairs.size(); ++e)
      if (mask >> e & 1u) prod *= f[e];
    total += prod;
  }
  return total;
}

std::vector<double> ursell_from_correlations(const std::vector<double>& rho, int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("ursell_from_correlations: m must be in 1..4");
  const std::size_t n = std::size_t{1} << m;
  if (rho.size() != n) throw std::invalid_argument("ursell_from_correlations: expected 2^m entries");
  std::vector<double> F(rho), out(n);
  F[0] = 1.0;
  connected_part(m, F.data(), out.data());
  return out;
}

}  // namespace henderson
