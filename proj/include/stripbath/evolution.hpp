// evolution.hpp — exact reduced dynamics of two number-conserving oscillators
// dephasing through a shared 1D harmonic bath with an equally spaced spectrum.
//
// Everything is parameterized by dimensionless time τ = ω₁t, coupling λ,
// separation σ, and inverse temperature Θ = βħω₁. The reduced density matrix
// evolves by pure elementwise factors built from two phase terms (p1, p2) and
// two dephasing terms (d1, d2):
//   p1(τ) = λ Σ_j (jτ − sin jτ)/j³ · [1 − (−1)ʲ cos jσ]
//   p2(τ) = λ Σ_j (jτ − sin jτ)/j³ · [cos jσ − (−1)ʲ]
//   d1(τ) = λ Σ_j (1 − cos jτ)/j³ · [1 − (−1)ʲ cos jσ] · coth(jΘ/2)
//   d2(τ) = 2λ Σ_j (1 − cos jτ)/j³ · [cos jσ − (−1)ʲ] · coth(jΘ/2)
// The phase sums and the zero-temperature dephasing sums close in terms of
// unit-circle polylogarithms; the thermal sums are truncated under an analytic
// tail bound.
#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "specfun.hpp"

namespace stripbath {

struct DimensionlessConfig {
  double lambda = 1.0;
  double sigma = pi / 2;
  std::optional<double> theta;      // βħω₁; empty = zero-temperature bath
  bool include_free_phase = false;  // carry the fast local oscillator phase
  double omega_ratio = 0.0;         // Ω_b/ω₁, used only with include_free_phase
};

inline void validate_config(const DimensionlessConfig& cfg) {
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
    throw ValidationError("config: lambda must be positive");
  if (!(cfg.sigma > 0.0) || !(cfg.sigma < pi))
    throw ValidationError("config: sigma must lie in (0, pi)");
  if (cfg.theta && (!(*cfg.theta > 0.0) || !std::isfinite(*cfg.theta)))
    throw ValidationError("config: Theta must be positive (or absent for zero temperature)");
  if (cfg.include_free_phase && !(cfg.omega_ratio > 0.0))
    throw ValidationError("config: free phase requires omega_ratio > 0");
}

inline DimensionlessConfig make_config(const DerivedParams& dp) {
  DimensionlessConfig c;
  c.lambda = dp.lambda;
  c.sigma = dp.sigma;
  c.theta = dp.theta;
  c.omega_ratio = dp.device.Omega_b / dp.omega1;
  return c;
}

struct EvolutionPhases {
  double tau = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

struct ModeSumPolicy {
  enum class Mode { fixed_terms, tolerance };
  Mode mode = Mode::tolerance;
  long terms = 0;        // fixed_terms: exactly this many modes
  double tol = 1e-10;    // tolerance: tail bound must fall below this
  long max_terms = 10'000'000;

  static ModeSumPolicy fixed_terms(long j) {
    if (j < 1) throw ValidationError("mode-sum policy: term count must be >= 1");
    ModeSumPolicy p;
    p.mode = Mode::fixed_terms;
    p.terms = j;
    p.max_terms = std::max(p.max_terms, j);
    return p;
  }
  static ModeSumPolicy tolerance(double tol, long max_terms = 10'000'000) {
    if (!(tol > 0.0)) throw ValidationError("mode-sum policy: tolerance must be positive");
    if (max_terms < 1) throw ValidationError("mode-sum policy: max_terms must be >= 1");
    ModeSumPolicy p;
    p.mode = Mode::tolerance;
    p.tol = tol;
    p.max_terms = max_terms;
    return p;
  }
};

namespace detail {

inline void require_nonnegative_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw ValidationError("tau must be a finite nonnegative time");
}

inline double coth(double x) { return 1.0 / std::tanh(x); }

// parity-weighted placement factors
inline double weight_self(int j, double sigma) {
  const double parity = (j % 2 == 0) ? 1.0 : -1.0;
  return 1.0 - parity * std::cos(j * sigma);
}
inline double weight_cross(int j, double sigma) {
  const double parity = (j % 2 == 0) ? 1.0 : -1.0;
  return std::cos(j * sigma) - parity;
}

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// Tail of the thermal sums past J modes: |w_j| ≤ 2 and (1−cos) ≤ 2 give
// |tail| ≤ pref·coth(JΘ/2)/(2J²) with pref = 4λ (self) or 8λ (cross).
inline double thermal_tail_bound(long j, double pref, double theta) {
  return pref * coth(0.5 * static_cast<double>(j) * theta) /
         (2.0 * static_cast<double>(j) * static_cast<double>(j));
}

// smallest J whose tail bound is below tol, or a truncation error
inline long thermal_terms_needed(const ModeSumPolicy& policy, double pref, double theta) {
  if (policy.mode == ModeSumPolicy::Mode::fixed_terms) return policy.terms;
  long lo = 1, hi = 1;
  while (thermal_tail_bound(hi, pref, theta) >= policy.tol) {
    if (hi >= policy.max_terms)
      throw TruncationError("thermal mode sum: tolerance unreachable within term cap",
                            thermal_tail_bound(policy.max_terms, pref, theta));
    lo = hi;
    hi = std::min(policy.max_terms, hi * 2);
  }
  while (lo < hi) {  // first J with bound < tol
    const long mid = lo + (hi - lo) / 2;
    if (thermal_tail_bound(mid, pref, theta) < policy.tol) hi = mid;
    else lo = mid + 1;
  }
  return hi;
}

}  // namespace detail

// Phase term p1: asymptotically linear in τ with slope λ(π²/6 − sl2(σ+π)),
// plus bounded oscillatory polylog parts.
inline double p1_closed(double tau, const DimensionlessConfig& cfg) {
  validate_config(cfg);
  detail::require_nonnegative_tau(tau);
  const double s = cfg.sigma;
  return cfg.lambda * (pi * pi * tau / 6.0 - tau * sl2(s + pi) + 0.5 * sl3(tau + s + pi) +
                       0.5 * sl3(tau - s + pi) - sl3(tau));
}

// Phase term p2: identically zero for τ ≤ σ (no influence before a phonon can
// cross the separation), then grows like λπ(τ−σ)²/4 until τ = π.
inline double p2_closed(double tau, const DimensionlessConfig& cfg) {
  validate_config(cfg);
  detail::require_nonnegative_tau(tau);
  const double s = cfg.sigma;
  return cfg.lambda * (pi * pi * tau / 12.0 + tau * sl2(s) + sl3(tau + pi) -
                       0.5 * sl3(tau + s) - 0.5 * sl3(tau - s));
}

enum class PhaseTerm { p1, p2 };
enum class DephasingTerm { d1, d2 };

// Truncated phase sums over the lowest J bath modes.
inline double p_mode_sum(PhaseTerm which, double tau, const DimensionlessConfig& cfg, long j_max) {
  validate_config(cfg);
  detail::require_nonnegative_tau(tau);
  if (j_max < 1) throw ValidationError("mode sum needs at least one mode");
  detail::KahanSum acc;
  for (long j = 1; j <= j_max; ++j) {
    const double dj = static_cast<double>(j);
    const double kernel = (dj * tau - std::sin(dj * tau)) / (dj * dj * dj);
    const double w = (which == PhaseTerm::p1) ? detail::weight_self(static_cast<int>(j), cfg.sigma)
                                              : detail::weight_cross(static_cast<int>(j), cfg.sigma);
    acc.add(kernel * w);
  }
  return cfg.lambda * acc.s;
}

// Zero-temperature dephasing, closed in terms of cl3.
inline double d1_zero_t(double tau, const DimensionlessConfig& cfg) {
  validate_config(cfg);
  detail::require_nonnegative_tau(tau);
  const double s = cfg.sigma;
  return cfg.lambda * (zeta3 - cl3(tau) - cl3(s + pi) + 0.5 * cl3(tau + s + pi) +
                       0.5 * cl3(tau - s + pi));
}

inline double d2_zero_t(double tau, const DimensionlessConfig& cfg) {
  validate_config(cfg);
  detail::require_nonnegative_tau(tau);
  const double s = cfg.sigma;
  return 2.0 * cfg.lambda * (0.75 * zeta3 + cl3(tau + pi) + cl3(s) - 0.5 * cl3(tau + s) -
                             0.5 * cl3(tau - s));
}

// Finite-temperature dephasing by truncated mode sum under the policy's tail
// control. Requires a thermal configuration.
inline double d_thermal(DephasingTerm which, double tau, const DimensionlessConfig& cfg,
                        const ModeSumPolicy& policy) {
  validate_config(cfg);
  detail::require_nonnegative_tau(tau);
  if (!cfg.theta)
    throw ValidationError("d_thermal: zero-temperature config; use the zero-temperature forms");
  const double theta = *cfg.theta;
  const bool cross = (which == DephasingTerm::d2);
  const double pref = (cross ? 8.0 : 4.0) * cfg.lambda;
  const long j_max = detail::thermal_terms_needed(policy, pref, theta);

  detail::KahanSum acc;
  for (long j = 1; j <= j_max; ++j) {
    const double dj = static_cast<double>(j);
    const double kernel = (1.0 - std::cos(dj * tau)) / (dj * dj * dj);
    const double w = cross ? detail::weight_cross(static_cast<int>(j), cfg.sigma)
                           : detail::weight_self(static_cast<int>(j), cfg.sigma);
    acc.add(kernel * w * detail::coth(0.5 * dj * theta));
  }
  return (cross ? 2.0 : 1.0) * cfg.lambda * acc.s;
}

// Evaluates all four terms for many τ against one configuration; thermal
// per-mode weights are precomputed once at construction.
class PhasesEvaluator {
 public:
  PhasesEvaluator(const DimensionlessConfig& cfg, const ModeSumPolicy& policy) : cfg_(cfg) {
    validate_config(cfg);
    if (cfg.theta) {
      const double theta = *cfg.theta;
      // the cross sum has the larger prefactor, hence the larger mode count
      const long j_max = detail::thermal_terms_needed(policy, 8.0 * cfg.lambda, theta);
      w1_.resize(static_cast<std::size_t>(j_max));
      w2_.resize(static_cast<std::size_t>(j_max));
      for (long j = 1; j <= j_max; ++j) {
        const double dj = static_cast<double>(j);
        const double ct = detail::coth(0.5 * dj * theta) / (dj * dj * dj);
        w1_[j - 1] = cfg.lambda * detail::weight_self(static_cast<int>(j), cfg.sigma) * ct;
        w2_[j - 1] = 2.0 * cfg.lambda * detail::weight_cross(static_cast<int>(j), cfg.sigma) * ct;
      }
    }
  }

  EvolutionPhases operator()(double tau) const {
    detail::require_nonnegative_tau(tau);
    EvolutionPhases ph;
    ph.tau = tau;
    ph.p1 = p1_closed(tau, cfg_);
    ph.p2 = p2_closed(tau, cfg_);
    if (!cfg_.theta) {
      ph.d1 = d1_zero_t(tau, cfg_);
      ph.d2 = d2_zero_t(tau, cfg_);
    } else {
      detail::KahanSum a1, a2;
      for (std::size_t i = 0; i < w1_.size(); ++i) {
        const double kernel = 1.0 - std::cos(static_cast<double>(i + 1) * tau);
        a1.add(kernel * w1_[i]);
        a2.add(kernel * w2_[i]);
      }
      ph.d1 = a1.s;
      ph.d2 = a2.s;
    }
    ph.d1 = std::max(0.0, ph.d1);  // exact cancellations may round barely negative
    return ph;
  }

 private:
  DimensionlessConfig cfg_;
  std::vector<double> w1_, w2_;
};

inline EvolutionPhases phases_at(double tau, const DimensionlessConfig& cfg,
                                 const ModeSumPolicy& policy) {
  return PhasesEvaluator(cfg, policy)(tau);
}

// Two-oscillator density matrix on the truncated Fock basis |n₁⟩⊗|n₂⟩,
// n ≤ cutoff, stored dense with row index n₁·(cutoff+1)+n₂.
struct FockDensityMatrix {
  int cutoff = 1;
  Matrix<std::complex<double>> rho;

  explicit FockDensityMatrix(int n_cutoff = 1)
      : cutoff(n_cutoff), rho((n_cutoff + 1) * (n_cutoff + 1)) {
    if (n_cutoff < 0) throw ValidationError("Fock cutoff must be >= 0");
  }
  int side() const { return cutoff + 1; }
  int dim() const { return side() * side(); }
  int index(int n1, int n2) const { return n1 * side() + n2; }
};

// both oscillators in (|0⟩ + |1⟩)/√2
inline FockDensityMatrix plus_plus_state() {
  FockDensityMatrix r(1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.rho(i, j) = 0.25;
  return r;
}

inline void validate_density(const FockDensityMatrix& st, bool check_psd = true) {
  const int d = st.dim();
  if (st.rho.n != d) throw ValidationError("density matrix dimension mismatch");
  std::complex<double> tr = 0.0;
  double herm = 0.0;
  for (int i = 0; i < d; ++i) {
    tr += st.rho(i, i);
    for (int j = 0; j < d; ++j)
      herm = std::max(herm, std::abs(st.rho(i, j) - std::conj(st.rho(j, i))));
  }
  if (herm > 1e-12) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(tr - 1.0) > 1e-12) throw ValidationError("density matrix trace is not 1");
  if (check_psd) {
    auto eig = jacobi_eigh(st.rho);
    if (eig.values.front() < -1e-10)
      throw ValidationError("density matrix has a significantly negative eigenvalue");
  }
}

namespace detail {

// Elementwise action of the evolution factors on a density matrix.
inline FockDensityMatrix apply_phases(const FockDensityMatrix& st, const EvolutionPhases& ph,
                                      const DimensionlessConfig& cfg) {
  FockDensityMatrix out(st.cutoff);
  const int side = st.side();
  // reduce the fast local phase once so the per-element angle stays small and
  // the factor remains an exact local unitary
  const double free_phi =
      cfg.include_free_phase ? reduce_angle(ph.tau * cfg.omega_ratio) : 0.0;
  for (int n1 = 0; n1 < side; ++n1)
    for (int n2 = 0; n2 < side; ++n2)
      for (int m1 = 0; m1 < side; ++m1)
        for (int m2 = 0; m2 < side; ++m2) {
          const int dn1 = n1 - m1, dn2 = n2 - m2;
          const int wp1 = (n1 + m1 + 1) * dn1 + (n2 + m2 + 1) * dn2;
          const int wp2 = (n1 + m1 + 1) * dn2 + (n2 + m2 + 1) * dn1;
          const int wd1 = dn1 * dn1 + dn2 * dn2;
          const int wd2 = dn1 * dn2;
          const double damping = ph.d1 * wd1 + ph.d2 * wd2;
          std::complex<double> f = 0.0;
          if (damping <= 700.0) {
            const double angle = ph.p1 * wp1 + ph.p2 * wp2 - free_phi * (dn1 + dn2);
            f = std::exp(-damping) * std::polar(1.0, angle);
          }
          out.rho(out.index(n1, n2), out.index(m1, m2)) =
              f * st.rho(st.index(n1, n2), st.index(m1, m2));
        }
  return out;
}

}  // namespace detail

inline FockDensityMatrix propagate(const FockDensityMatrix& rho0, double tau,
                                   const DimensionlessConfig& cfg, const ModeSumPolicy& policy) {
  validate_density(rho0);
  return detail::apply_phases(rho0, phases_at(tau, cfg, policy), cfg);
}

}  // namespace stripbath
