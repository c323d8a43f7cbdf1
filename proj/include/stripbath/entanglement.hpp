// entanglement.hpp — partial transpose, trace norm, and logarithmic
// negativity for the two-oscillator Fock-truncated density matrix, plus
// τ-sweeps producing negativity curves.
#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "evolution.hpp"
#include "linalg.hpp"

namespace stripbath {

enum class Subsystem { left, right };

namespace detail {

inline void check_density_shape(const FockDensityMatrix& st) {
  const int d = st.dim();
  if (st.rho.n != d) throw ValidationError("density matrix dimension mismatch");
  double herm = 0.0;
  std::complex<double> tr = 0.0;
  for (int i = 0; i < d; ++i) {
    tr += st.rho(i, i);
    for (int j = 0; j < i; ++j)
      herm = std::max(herm, std::abs(st.rho(i, j) - std::conj(st.rho(j, i))));
  }
  if (herm > 1e-12) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(tr - 1.0) > 1e-12) throw ValidationError("density matrix trace is not 1");
}

}  // namespace detail

// Transpose the indices of one oscillator only: for the left,
// out[(n₁,n₂),(n₁′,n₂′)] = in[(n₁′,n₂),(n₁,n₂′)]. Hermiticity is preserved.
inline Matrix<std::complex<double>> partial_transpose(const FockDensityMatrix& st,
                                                      Subsystem which) {
  detail::check_density_shape(st);
  const int side = st.side();
  Matrix<std::complex<double>> out(st.dim());
  for (int n1 = 0; n1 < side; ++n1)
    for (int n2 = 0; n2 < side; ++n2)
      for (int m1 = 0; m1 < side; ++m1)
        for (int m2 = 0; m2 < side; ++m2) {
          const auto& src = (which == Subsystem::left)
                                ? st.rho(st.index(m1, n2), st.index(n1, m2))
                                : st.rho(st.index(n1, m2), st.index(m1, n2));
          out(st.index(n1, n2), st.index(m1, m2)) = src;
        }
  return out;
}

// Σ|eigenvalues| of a Hermitian matrix.
inline double trace_norm_hermitian(const Matrix<std::complex<double>>& m) {
  double herm = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < i; ++j)
      herm = std::max(herm, std::abs(m(i, j) - std::conj(m(j, i))));
  if (herm > 1e-10) throw ValidationError("trace norm requested for a non-Hermitian matrix");
  const auto eig = jacobi_eigh(m);
  double s = 0.0;
  for (double v : eig.values) s += std::abs(v);
  return s;
}

// E_N = log₂‖ρ^{Γ_left}‖₁, clamped to exactly 0 below the numerical noise
// floor so separable states report no entanglement.
inline double log_negativity(const FockDensityMatrix& st) {
  const double tn = trace_norm_hermitian(partial_transpose(st, Subsystem::left));
  const double en = std::log2(tn);
  return (en < 1e-12) ? 0.0 : en;
}

struct SeriesMetadata {
  ModeSumPolicy policy;
};

struct NegativitySeries {
  DimensionlessConfig cfg;
  std::vector<double> taus;
  std::vector<double> values;
  SeriesMetadata metadata;
};

// E_N of the propagated state over an increasing τ grid.
inline NegativitySeries negativity_curve(const DimensionlessConfig& cfg,
                                         std::vector<double> taus, const FockDensityMatrix& rho0,
                                         const ModeSumPolicy& policy) {
  if (taus.empty()) throw ValidationError("negativity curve needs a nonempty tau grid");
  for (std::size_t i = 0; i + 1 < taus.size(); ++i)
    if (!(taus[i] < taus[i + 1]))
      throw ValidationError("negativity curve needs a strictly increasing tau grid");
  validate_density(rho0);

  NegativitySeries series;
  series.cfg = cfg;
  series.metadata.policy = policy;
  series.values.reserve(taus.size());
  const PhasesEvaluator phases(cfg, policy);
  for (double tau : taus)
    series.values.push_back(log_negativity(detail::apply_phases(rho0, phases(tau), cfg)));
  series.taus = std::move(taus);
  return series;
}

}  // namespace stripbath
