#include "henderson/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

namespace henderson {

GridSpec::GridSpec(double R, int M) : R_(R), M_(M) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("grid extent R must be positive");
  if (M < 3 || M % 2 == 0) throw std::invalid_argument("grid size M must be odd and >= 3");
  h_ = 2.0 * R / (M - 1);
}

int GridSpec::node_of(double x) const {
  double k = x / h_ + center();
  double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 || kr < 0 || kr > M_ - 1) return -1;
  return static_cast<int>(kr);
}

void require_same(const GridSpec& a, const GridSpec& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

GridFunction::GridFunction(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), v_(std::move(values)) {
  if (static_cast<int>(v_.size()) != spec.M())
    throw std::invalid_argument("GridFunction: value count does not match grid");
}

bool GridFunction::is_even(double tol) const {
  const int M = size();
  for (int k = 0; k < M / 2; ++k)
    if (std::abs(v_[k] - v_[M - 1 - k]) > tol) return false;
  return true;
}

bool GridFunction::is_finite() const {
  return std::all_of(v_.begin(), v_.end(), [](double a) { return std::isfinite(a); });
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double a : v_) m = std::max(m, std::abs(a));
  return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) { return axpy(1.0, o); }
GridFunction& GridFunction::operator-=(const GridFunction& o) { return axpy(-1.0, o); }

GridFunction& GridFunction::operator*=(double a) {
  for (double& x : v_) x *= a;
  return *this;
}

GridFunction& GridFunction::axpy(double a, const GridFunction& o) {
  require_same(spec_, o.spec_, "axpy");
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += a * o.v_[k];
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double a, GridFunction b) { return b *= a; }

GridFunction hadamard(const GridFunction& a, const GridFunction& b) {
  require_same(a.spec(), b.spec(), "hadamard");
  GridFunction r(a.spec());
  for (int k = 0; k < a.size(); ++k) r[k] = a[k] * b[k];
  return r;
}

bool Kernel2D::is_symmetric(double tol) const {
  const int M = size();
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

void Kernel2D::symmetrize() {
  const int M = size();
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < i; ++j) {
      double s = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = s;
      (*this)(j, i) = s;
    }
}

Kernel2D& Kernel2D::axpy(double a, const Kernel2D& o) {
  require_same(spec_, o.spec_, "Kernel2D::axpy");
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += a * o.v_[k];
  return *this;
}

GridFunction Kernel2D::row_integrals() const {
  GridFunction r(spec_);
  const int M = size();
  for (int i = 0; i < M; ++i) {
    const double* ri = row(i);
    double s = 0.0;
    for (int j = 0; j < M; ++j) s += spec_.weight(j) * ri[j];
    r[i] = s;
  }
  return r;
}

GridFunction Kernel2D::row_abs_integrals() const {
  GridFunction r(spec_);
  const int M = size();
  for (int i = 0; i < M; ++i) {
    const double* ri = row(i);
    double s = 0.0;
    for (int j = 0; j < M; ++j) s += spec_.weight(j) * std::abs(ri[j]);
    r[i] = s;
  }
  return r;
}

double integrate(const GridFunction& f) {
  const GridSpec& s = f.spec();
  // Pair symmetric nodes first so that odd integrands cancel exactly.
  const int M = s.M(), c = s.center();
  double acc = 0.0;
  for (int k = 0; k < c; ++k) acc += s.weight(k) * (f[k] + f[M - 1 - k]);
  return acc + s.weight(c) * f[c];
}

double inner(const GridFunction& f, const GridFunction& g) {
  require_same(f.spec(), g.spec(), "inner");
  const GridSpec& s = f.spec();
  const int M = s.M(), c = s.center();
  double acc = 0.0;
  for (int k = 0; k < c; ++k)
    acc += s.weight(k) * (f[k] * g[k] + f[M - 1 - k] * g[M - 1 - k]);
  return acc + s.weight(c) * f[c] * g[c];
}

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Linear convolution of two real sequences of length M via r2c/c2r transforms.
std::vector<double> linear_convolution(const double* a, const double* b, int M) {
  int n = 1;
  while (n < 2 * M - 1) n <<= 1;
  const int nc = n / 2 + 1;
  double* in = fftw_alloc_real(static_cast<std::size_t>(n));
  fftw_complex* fa = fftw_alloc_complex(static_cast<std::size_t>(nc));
  fftw_complex* fb = fftw_alloc_complex(static_cast<std::size_t>(nc));
  fftw_plan pa, pb, pinv;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    pa = fftw_plan_dft_r2c_1d(n, in, fa, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(n, in, fb, FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_1d(n, fa, in, FFTW_ESTIMATE);
  }
  std::fill(in, in + n, 0.0);
  std::copy(a, a + M, in);
  fftw_execute(pa);
  std::fill(in, in + n, 0.0);
  std::copy(b, b + M, in);
  fftw_execute(pb);
  for (int k = 0; k < nc; ++k) {
    double re = fa[k][0] * fb[k][0] - fa[k][1] * fb[k][1];
    double im = fa[k][0] * fb[k][1] + fa[k][1] * fb[k][0];
    fa[k][0] = re;
    fa[k][1] = im;
  }
  fftw_execute(pinv);
  std::vector<double> out(in, in + (2 * M - 1));
  for (double& x : out) x /= n;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pinv);
  }
  fftw_free(in);
  fftw_free(fa);
  fftw_free(fb);
  return out;
}

}  // namespace

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  require_same(f.spec(), g.spec(), "convolve");
  const GridSpec& s = f.spec();
  const int M = s.M(), c = s.center();
  std::vector<double> full = linear_convolution(f.data(), g.data(), M);
  GridFunction r(s);
  for (int i = 0; i < M; ++i) r[i] = s.h() * full[static_cast<std::size_t>(i + c)];
  return r;
}

GridFunction convolve_direct(const GridFunction& f, const GridFunction& g) {
  require_same(f.spec(), g.spec(), "convolve_direct");
  const GridSpec& s = f.spec();
  const int M = s.M(), c = s.center();
  GridFunction r(s);
  for (int i = 0; i < M; ++i) {
    double acc = 0.0;
    for (int j = 0; j < M; ++j) {
      int d = i - j + c;
      if (d >= 0 && d < M) acc += f[d] * g[j];
    }
    r[i] = s.h() * acc;
  }
  return r;
}

GridFunction apply_kernel(const Kernel2D& k, const GridFunction& v) {
  require_same(k.spec(), v.spec(), "apply_kernel");
  const GridSpec& s = v.spec();
  const int M = s.M();
  std::vector<double> wv(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) wv[j] = s.weight(j) * v[j];
  GridFunction r(s);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < M; ++i) {
    const double* ki = k.row(i);
    double acc = 0.0;
    for (int j = 0; j < M; ++j) acc += ki[j] * wv[j];
    r[i] = acc;
  }
  return r;
}

double tail_mass(const GridFunction& f, double frac) {
  const GridSpec& s = f.spec();
  double all = 0.0, tail = 0.0;
  for (int k = 0; k < s.M(); ++k) {
    double a = s.weight(k) * std::abs(f[k]);
    all += a;
    if (std::abs(s.x(k)) > frac * s.R()) tail += a;
  }
  return all > 0.0 ? tail / all : 0.0;
}

}  // namespace henderson
