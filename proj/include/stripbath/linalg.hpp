// linalg.hpp — minimal dense linear algebra: square matrices and a cyclic
// Jacobi eigensolver for real-symmetric / complex-Hermitian matrices.
//
// Problem sizes here are tiny (dimension ≤ a few hundred), where Jacobi is
// simple, backward-stable, and accurate to a small multiple of machine epsilon
// times the matrix norm — no external solver library is warranted.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace stripbath {

template <typename T>
struct Matrix {
  int n = 0;
  std::vector<T> a;  // row-major, n*n

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, T{}) {}

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = T{1};
    return m;
  }
};

namespace detail {

inline double conj_or_id(double x) { return x; }
inline std::complex<double> conj_or_id(const std::complex<double>& x) { return std::conj(x); }

}  // namespace detail

template <typename T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (const T& x : m.a) s += std::norm(std::complex<double>(x));
  return std::sqrt(s);
}

template <typename T>
double off_diagonal_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (i != j) s += std::norm(std::complex<double>(m(i, j)));
  return std::sqrt(s);
}

template <typename T>
struct EighResult {
  std::vector<double> values;  // ascending
  Matrix<T> vectors;           // columns are the corresponding eigenvectors
};

// Cyclic Jacobi eigendecomposition of a Hermitian matrix. The caller is
// responsible for Hermiticity; only the lower triangle mirrored through the
// conjugate is referenced implicitly via symmetric updates. Terminates when the
// off-diagonal Frobenius norm falls below tol_factor·‖A‖_F.
template <typename T>
EighResult<T> jacobi_eigh(Matrix<T> m, double tol_factor = 1e-14, int max_sweeps = 60) {
  const int n = m.n;
  Matrix<T> v = Matrix<T>::identity(n);
  if (n == 0) return {{}, v};

  const double norm0 = frobenius_norm(m);
  const double tol_abs = tol_factor * (norm0 > 0.0 ? norm0 : 1.0);
  // skipping pairs below this still leaves off-norm ≤ tol_abs
  const double skip = tol_abs / n;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(m) <= tol_abs) break;
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const T g = m(p, q);
        const double ag = std::abs(std::complex<double>(g));
        if (ag <= skip) continue;
        rotated = true;

        // unitary phase of the pivot; ±1 in the real-symmetric case
        T u;
        if constexpr (std::is_floating_point_v<T>) {
          u = (g >= 0) ? T{1} : T{-1};
        } else {
          u = g / ag;
        }
        const double alpha = std::real(std::complex<double>(m(p, p)));
        const double beta = std::real(std::complex<double>(m(q, q)));
        const double tau = (beta - alpha) / (2.0 * ag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T su = s * u;
        const T suc = detail::conj_or_id(su);

        // A ← R†AR with R mixing columns p,q: col_p' = c·col_p − s·ū·col_q,
        // col_q' = s·u·col_p + c·col_q
        for (int i = 0; i < n; ++i) {
          const T aip = m(i, p), aiq = m(i, q);
          m(i, p) = c * aip - suc * aiq;
          m(i, q) = su * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const T api = m(p, i), aqi = m(q, i);
          m(p, i) = c * api - su * aqi;
          m(q, i) = suc * api + c * aqi;
        }
        // pivot entries, restored to exact real/zero form
        m(p, p) = T{c * c * alpha - 2.0 * c * s * ag + s * s * beta};
        m(q, q) = T{s * s * alpha + 2.0 * c * s * ag + c * c * beta};
        m(p, q) = T{};
        m(q, p) = T{};

        for (int i = 0; i < n; ++i) {
          const T vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - suc * viq;
          v(i, q) = su * vip + c * viq;
        }
      }
    }
    if (!rotated) break;
  }
  if (off_diagonal_norm(m) > tol_abs)
    throw ResourceError("jacobi_eigh: no convergence within sweep budget");

  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = std::real(std::complex<double>(m(i, i)));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });

  EighResult<T> r;
  r.values.resize(n);
  r.vectors = Matrix<T>(n);
  for (int k = 0; k < n; ++k) {
    r.values[k] = vals[order[k]];
    for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
  }
  return r;
}

}  // namespace stripbath
