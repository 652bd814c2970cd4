// Serial reference kernels: direct sums over the connected-graph list, plain
// nested loops, no symmetry shortcuts. Kept for testing and benchmarking.
#include <stdexcept>

#include "cluster_kernels.hpp"

namespace henderson::detail {

namespace {

struct GraphEval {
  GraphSet gs;
  explicit GraphEval(int n) : gs(connected_graphs(n)) {}
  double operator()(const BoltzmannLookup& B, const int* pos) const {
    const int n = gs.n;
    double m[25];
    for (int a = 0; a < n; ++a) {
      m[a * n + a] = 1.0;
      for (int b = 0; b < a; ++b) m[a * n + b] = m[b * n + a] = B(pos[a] - pos[b]);
    }
    return ursell_graph_sum(gs, m);
  }
};

// Sum over internal vertices pos[first..n-1] on the grid with trapezoid weights.
double integrate_internal(const GraphEval& ev, const BoltzmannLookup& B,
                          const std::vector<double>& w, int* pos, int first, int n) {
  if (first == n) return ev(B, pos);
  double acc = 0.0;
  for (int k = 0; k < static_cast<int>(w.size()); ++k) {
    pos[first] = k;
    acc += w[k] * integrate_internal(ev, B, w, pos, first + 1, n);
  }
  return acc;
}

}  // namespace

Kernel2D T_table_serial(const BoltzmannLookup& B, const GridSpec& g, int n) {
  if (n < 3 || n > 5) throw std::invalid_argument("T table: n must be in 3..5");
  const GraphEval ev(n);
  const std::vector<double> w = trapezoid_weights(g);
  const int M = g.M(), c = g.center();
  Kernel2D T(g);
  int pos[5];
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      pos[0] = i;
      pos[1] = c;
      pos[2] = j;
      T(i, j) = integrate_internal(ev, B, w, pos, 3, n);
    }
  return T;
}

Kernel2D Q_table_serial(const BoltzmannLookup& B, const GridSpec& g, int n) {
  if (n < 4 || n > 5) throw std::invalid_argument("Q table: n must be in 4..5");
  const GraphEval ev(n);
  const std::vector<double> w = trapezoid_weights(g);
  const int M = g.M(), c = g.center();
  Kernel2D Q(g);
  int pos[5];
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      double acc = 0.0;
      for (int k = 0; k < M; ++k) {
        pos[0] = i;
        pos[1] = c;
        pos[2] = k;
        pos[3] = k + j - c;
        acc += w[k] * integrate_internal(ev, B, w, pos, 4, n);
      }
      Q(i, j) = acc;
    }
  Q.symmetrize();
  return Q;
}

GridFunction I_line_serial(const BoltzmannLookup& B, const GridSpec& g, int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("I line: n must be in 2..5");
  const GraphEval ev(n);
  const std::vector<double> w = trapezoid_weights(g);
  const int c = g.center();
  GridFunction I(g);
  int pos[5];
  for (int i = 0; i < g.M(); ++i) {
    pos[0] = c;
    pos[1] = i;
    I[i] = integrate_internal(ev, B, w, pos, 2, n);
  }
  return I;
}

double J_scalar_serial(const BoltzmannLookup& B, const GridSpec& g, int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("J scalar: n must be in 2..4");
  const GraphEval ev(n);
  const std::vector<double> w = trapezoid_weights(g);
  int pos[5];
  pos[0] = g.center();
  return integrate_internal(ev, B, w, pos, 1, n);
}

}  // namespace henderson::detail
