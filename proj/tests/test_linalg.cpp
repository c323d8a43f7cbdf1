// Tests for the Jacobi eigensolver: hand-diagonalizable cases plus
// reconstruction/orthonormality checks on random matrices.
#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include <stripbath/linalg.hpp>

using namespace stripbath;
using cplx = std::complex<double>;

namespace {

template <typename T>
double reconstruction_error(const Matrix<T>& a, const EighResult<T>& e) {
  const int n = a.n;
  double err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += cplx(e.vectors(i, k)) * e.values[k] * std::conj(cplx(e.vectors(j, k)));
      err = std::max(err, std::abs(s - cplx(a(i, j))));
    }
  return err;
}

template <typename T>
double orthonormality_error(const Matrix<T>& v) {
  const int n = v.n;
  double err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(cplx(v(k, i))) * cplx(v(k, j));
      err = std::max(err, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return err;
}

}  // namespace

TEST_CASE("diagonal and hand-sized symmetric matrices") {
  Matrix<double> d(3);
  d(0, 0) = 5.0;
  d(1, 1) = -1.0;
  d(2, 2) = 2.0;
  auto e = jacobi_eigh(d);
  REQUIRE(e.values.size() == 3);
  CHECK(e.values[0] == -1.0);
  CHECK(e.values[1] == 2.0);
  CHECK(e.values[2] == 5.0);

  Matrix<double> a(2);
  a(0, 0) = 2.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  auto ea = jacobi_eigh(a);
  CHECK_THAT(ea.values[0], Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK_THAT(ea.values[1], Catch::Matchers::WithinAbs(3.0, 1e-14));
  // eigenvector of λ=1 is (1,−1)/√2 up to sign
  CHECK_THAT(std::abs(ea.vectors(0, 0) * ea.vectors(1, 0)), Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("hand-sized Hermitian matrix with complex off-diagonal") {
  Matrix<cplx> h(2);
  h(0, 0) = 1.0;
  h(0, 1) = cplx(0.0, 1.0);
  h(1, 0) = cplx(0.0, -1.0);
  h(1, 1) = 1.0;
  auto e = jacobi_eigh(h);
  CHECK_THAT(e.values[0], Catch::Matchers::WithinAbs(0.0, 1e-14));
  CHECK_THAT(e.values[1], Catch::Matchers::WithinAbs(2.0, 1e-14));
  CHECK(reconstruction_error(h, e) < 1e-13);
  CHECK(orthonormality_error(e.vectors) < 1e-13);
}

TEST_CASE("random real symmetric matrices reconstruct") {
  std::mt19937 rng(77u);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n : {1, 5, 30, 64}) {
    Matrix<double> a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const double x = g(rng);
        a(i, j) = x;
        a(j, i) = x;
      }
    auto e = jacobi_eigh(a);
    const double nrm = frobenius_norm(a);
    CHECK(reconstruction_error(a, e) < 1e-12 * std::max(1.0, nrm));
    CHECK(orthonormality_error(e.vectors) < 1e-12);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));

    double tr = 0.0, tr2 = 0.0;
    for (int i = 0; i < n; ++i) tr += a(i, i);
    for (double v : e.values) tr2 += v;
    CHECK_THAT(tr2, Catch::Matchers::WithinAbs(tr, 1e-11 * std::max(1.0, std::abs(tr))));
  }
}

TEST_CASE("random complex Hermitian matrices reconstruct") {
  std::mt19937 rng(4242u);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n : {2, 8, 40}) {
    Matrix<cplx> a(n);
    for (int i = 0; i < n; ++i) {
      a(i, i) = g(rng);
      for (int j = 0; j < i; ++j) {
        const cplx x(g(rng), g(rng));
        a(i, j) = x;
        a(j, i) = std::conj(x);
      }
    }
    auto e = jacobi_eigh(a);
    CHECK(reconstruction_error(a, e) < 1e-12 * frobenius_norm(a));
    CHECK(orthonormality_error(e.vectors) < 1e-12);

    // Σλ² = ‖A‖²_F for Hermitian A
    double s2 = 0.0;
    for (double v : e.values) s2 += v * v;
    const double f2 = frobenius_norm(a) * frobenius_norm(a);
    CHECK_THAT(s2, Catch::Matchers::WithinRel(f2, 1e-12));
  }
}

TEST_CASE("degenerate spectra keep an orthonormal basis") {
  Matrix<cplx> a(4);
  for (int i = 0; i < 4; ++i) a(i, i) = 3.0;
  auto e = jacobi_eigh(a);
  for (double v : e.values) CHECK(v == 3.0);
  CHECK(orthonormality_error(e.vectors) < 1e-14);
}
