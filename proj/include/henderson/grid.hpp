#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace henderson {

// Uniform symmetric grid on [-R, R] with M (odd) nodes; node (M-1)/2 is x = 0.
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(double R, int M);

  double R() const { return R_; }
  int M() const { return M_; }
  double h() const { return h_; }
  int center() const { return (M_ - 1) / 2; }
  double x(int k) const { return (k - center()) * h_; }
  // Trapezoid weight of node k.
  double weight(int k) const { return (k == 0 || k == M_ - 1) ? 0.5 * h_ : h_; }
  // Index of the node at x, or -1 if x is not (within 1e-9 h) a node.
  int node_of(double x) const;

  bool operator==(const GridSpec& o) const { return M_ == o.M_ && R_ == o.R_; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

 private:
  double R_ = 1.0;
  int M_ = 3;
  double h_ = 1.0;
};

class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const GridSpec& spec, double fill = 0.0)
      : spec_(spec), v_(static_cast<std::size_t>(spec.M()), fill) {}
  GridFunction(const GridSpec& spec, std::vector<double> values);

  template <class F>
  static GridFunction sample(const GridSpec& spec, F&& f) {
    GridFunction g(spec);
    for (int k = 0; k < spec.M(); ++k) g[k] = f(spec.x(k));
    return g;
  }

  const GridSpec& spec() const { return spec_; }
  int size() const { return spec_.M(); }
  double& operator[](int k) { return v_[static_cast<std::size_t>(k)]; }
  double operator[](int k) const { return v_[static_cast<std::size_t>(k)]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  const std::vector<double>& values() const { return v_; }

  bool is_even(double tol = 0.0) const;
  bool is_finite() const;
  double max_abs() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double a);
  // this += a * o
  GridFunction& axpy(double a, const GridFunction& o);

 private:
  GridSpec spec_;
  std::vector<double> v_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double a, GridFunction b);
// Pointwise product.
GridFunction hadamard(const GridFunction& a, const GridFunction& b);

// Row-major M x M table k(x_i, x_j).
class Kernel2D {
 public:
  Kernel2D() = default;
  explicit Kernel2D(const GridSpec& spec, double fill = 0.0)
      : spec_(spec), v_(static_cast<std::size_t>(spec.M()) * spec.M(), fill) {}

  const GridSpec& spec() const { return spec_; }
  int size() const { return spec_.M(); }
  double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * spec_.M() + j]; }
  double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * spec_.M() + j]; }
  double* row(int i) { return v_.data() + static_cast<std::size_t>(i) * spec_.M(); }
  const double* row(int i) const { return v_.data() + static_cast<std::size_t>(i) * spec_.M(); }

  bool is_symmetric(double tol = 0.0) const;
  void symmetrize();
  Kernel2D& axpy(double a, const Kernel2D& o);
  // Trapezoid integral over the second argument.
  GridFunction row_integrals() const;
  GridFunction row_abs_integrals() const;

 private:
  GridSpec spec_;
  std::vector<double> v_;
};

void require_same(const GridSpec& a, const GridSpec& b, const char* what);

double integrate(const GridFunction& f);
double inner(const GridFunction& f, const GridFunction& g);
// (f*g)(x_i) = h * sum_j f(x_i - x_j) g(x_j), f taken as zero off the grid.
GridFunction convolve(const GridFunction& f, const GridFunction& g);
// Direct O(M^2) evaluation of the same sum; used as a reference.
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g);
GridFunction apply_kernel(const Kernel2D& k, const GridFunction& v);
// Fraction of L1 mass of f carried by |x| > frac * R.
double tail_mass(const GridFunction& f, double frac = 0.9);

}  // namespace henderson
