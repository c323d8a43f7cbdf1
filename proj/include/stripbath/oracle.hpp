// oracle.hpp — brute-force validation path: build the truncated
// system+bath Hamiltonian with a small number of strip modes, evolve the
// joint state by exact diagonalization, trace out the bath, and compare with
// the analytic elementwise propagator restricted to the same finite mode set.
//
// The brute-force side touches nothing but the Hamiltonian matrix and dense
// linear algebra, so agreement with the analytic factors is a genuinely
// independent check of the reduced dynamics.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "evolution.hpp"
#include "linalg.hpp"
#include "model.hpp"

namespace stripbath {

struct BathTruncation {
  int n_modes = 1;            // J lowest strip modes kept
  int n_max = 10;             // Fock cutoff per bath mode
  std::vector<double> omega;  // ω_j, rad/s
  std::vector<double> g1, g2; // couplings of each oscillator to mode j, rad/s
};

// Pull frequencies and couplings from the device model; coupling_scale allows
// shrinking all g uniformly to keep conditional displacements inside the Fock
// cutoff (the analytic comparison is exact for any scale).
inline BathTruncation make_bath_truncation(int n_modes, int n_max, const DerivedParams& dp,
                                           double coupling_scale = 1.0,
                                           const CouplingSpec& spec = CouplingSpec::point_like()) {
  if (n_modes < 1) throw ValidationError("bath truncation needs at least one mode");
  if (n_max < 1) throw ValidationError("bath truncation needs a positive Fock cutoff");
  BathTruncation t;
  t.n_modes = n_modes;
  t.n_max = n_max;
  t.omega.resize(n_modes);
  t.g1.resize(n_modes);
  t.g2.resize(n_modes);
  double worst = 0.0;
  for (int j = 1; j <= n_modes; ++j) {
    t.omega[j - 1] = mode_frequency(j, dp);
    t.g1[j - 1] = coupling_scale * coupling(1, j, dp, spec);
    t.g2[j - 1] = coupling_scale * coupling(2, j, dp, spec);
    worst = std::max({worst, std::abs(t.g1[j - 1]) / t.omega[j - 1],
                      std::abs(t.g2[j - 1]) / t.omega[j - 1]});
  }
  if (worst > 0.3 * std::sqrt(static_cast<double>(n_max)))
    throw ValidationError("bath truncation: coupling displacement does not fit the Fock cutoff");
  return t;
}

namespace detail {

inline std::int64_t bath_dimension(const BathTruncation& t) {
  std::int64_t b = 1;
  for (int j = 0; j < t.n_modes; ++j) b *= t.n_max + 1;
  return b;
}

inline void check_oracle_dimension(const BathTruncation& t, int system_cutoff) {
  const std::int64_t side = system_cutoff + 1;
  if (system_cutoff < 0) throw ValidationError("system cutoff must be >= 0");
  const std::int64_t total = side * side * bath_dimension(t);
  if (total > 100'000)
    throw ResourceError("oracle dimension " + std::to_string(total) + " exceeds the 1e5 guard");
}

// conditional force on mode j in photon sector (n1, n2)
inline double sector_force(const BathTruncation& t, int j, int n1, int n2) {
  return (n1 + 0.5) * t.g1[j] + (n2 + 0.5) * t.g2[j];
}

// bath-only block Hamiltonian of one photon sector, without the photon free
// energy (an exact identity shift inside the block)
inline Matrix<double> sector_block(const BathTruncation& t, int n1, int n2) {
  const int b_dim = static_cast<int>(bath_dimension(t));
  Matrix<double> h(b_dim);
  std::vector<int> m(static_cast<std::size_t>(t.n_modes), 0);
  for (int b = 0; b < b_dim; ++b) {
    double diag = 0.0;
    for (int j = 0; j < t.n_modes; ++j) diag += t.omega[j] * (m[j] + 0.5);
    h(b, b) = diag;
    int stride = 1;
    for (int j = 0; j < t.n_modes; ++j) {
      if (m[j] < t.n_max) {
        const double el = sector_force(t, j, n1, n2) * std::sqrt(m[j] + 1.0);
        h(b, b + stride) = el;
        h(b + stride, b) = el;
      }
      stride *= t.n_max + 1;
    }
    for (int j = 0; j < t.n_modes; ++j) {  // advance the mode occupation odometer
      if (++m[j] <= t.n_max) break;
      m[j] = 0;
    }
  }
  return h;
}

}  // namespace detail

// Full dense system+bath Hamiltonian (divided by ħ, in rad/s), block-diagonal
// in the photon sector because the interaction is purely number-conserving.
inline Matrix<double> build_hamiltonian(const BathTruncation& t, const DerivedParams& dp,
                                        int system_cutoff = 1) {
  detail::check_oracle_dimension(t, system_cutoff);
  const int side = system_cutoff + 1;
  const int b_dim = static_cast<int>(detail::bath_dimension(t));
  Matrix<double> h(side * side * b_dim);
  for (int n1 = 0; n1 < side; ++n1)
    for (int n2 = 0; n2 < side; ++n2) {
      const int s = n1 * side + n2;
      const auto block = detail::sector_block(t, n1, n2);
      const double photon_energy = dp.device.Omega_b * (n1 + n2 + 1.0);
      for (int a = 0; a < b_dim; ++a) {
        for (int b = 0; b < b_dim; ++b)
          if (block(a, b) != 0.0) h(s * b_dim + a, s * b_dim + b) = block(a, b);
        h(s * b_dim + a, s * b_dim + a) += photon_energy;
      }
    }
  return h;
}

// Diagonalizes every photon-sector block once; evaluates the reduced system
// state at arbitrary times cheaply afterwards.
class OracleEvolver {
 public:
  OracleEvolver(const BathTruncation& t, const DerivedParams& dp, int system_cutoff = 1)
      : trunc_(t), dp_(dp), cutoff_(system_cutoff) {
    detail::check_oracle_dimension(t, system_cutoff);
    const int side = cutoff_ + 1;
    eig_.reserve(static_cast<std::size_t>(side) * side);
    for (int n1 = 0; n1 < side; ++n1)
      for (int n2 = 0; n2 < side; ++n2)
        eig_.push_back(jacobi_eigh(detail::sector_block(t, n1, n2)));
  }

  // ψ0 = (system amplitudes) ⊗ bath vacuum → exp(−iHt/ħ) → trace out bath.
  FockDensityMatrix reduce_at(const std::vector<std::complex<double>>& sys_amplitudes, double t,
                              bool include_free_phase = false) const {
    const int side = cutoff_ + 1;
    const int dim = side * side;
    if (static_cast<int>(sys_amplitudes.size()) != dim)
      throw ValidationError("system amplitude vector has the wrong dimension");
    double norm2 = 0.0;
    for (const auto& c : sys_amplitudes) norm2 += std::norm(c);
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw ValidationError("system amplitude vector is not normalized");

    const int b_dim = static_cast<int>(detail::bath_dimension(trunc_));
    // bath part of each sector branch: χ_s(t) = V e^{−iΛt} V† |vacuum⟩
    std::vector<std::vector<std::complex<double>>> chi(static_cast<std::size_t>(dim));
    for (int s = 0; s < dim; ++s) {
      const auto& e = eig_[static_cast<std::size_t>(s)];
      std::vector<std::complex<double>> phased(static_cast<std::size_t>(b_dim));
      for (int k = 0; k < b_dim; ++k)
        phased[k] = e.vectors(0, k) * std::polar(1.0, -e.values[k] * t);
      auto& x = chi[static_cast<std::size_t>(s)];
      x.assign(static_cast<std::size_t>(b_dim), 0.0);
      for (int k = 0; k < b_dim; ++k) {
        const auto p = phased[k];
        for (int b = 0; b < b_dim; ++b) x[b] += e.vectors(b, k) * p;
      }
      if (include_free_phase) {
        const int n1 = s / side, n2 = s % side;
        const double phi = reduce_angle(dp_.device.Omega_b * (n1 + n2 + 1.0) * t);
        const auto f = std::polar(1.0, -phi);
        for (auto& v : x) v *= f;
      }
    }

    FockDensityMatrix out(cutoff_);
    for (int s = 0; s < dim; ++s)
      for (int sp = 0; sp < dim; ++sp) {
        std::complex<double> overlap = 0.0;
        for (int b = 0; b < b_dim; ++b)
          overlap += chi[static_cast<std::size_t>(s)][b] *
                     std::conj(chi[static_cast<std::size_t>(sp)][b]);
        out.rho(s, sp) = sys_amplitudes[s] * std::conj(sys_amplitudes[sp]) * overlap;
      }
    return out;
  }

  const EighResult<double>& sector_eigensystem(int n1, int n2) const {
    return eig_[static_cast<std::size_t>(n1) * (cutoff_ + 1) + n2];
  }

 private:
  BathTruncation trunc_;
  DerivedParams dp_;
  int cutoff_;
  std::vector<EighResult<double>> eig_;
};

inline FockDensityMatrix evolve_and_reduce(const std::vector<std::complex<double>>& sys_amplitudes,
                                           double t, const BathTruncation& trunc,
                                           const DerivedParams& dp, int system_cutoff = 1,
                                           bool include_free_phase = false) {
  return OracleEvolver(trunc, dp, system_cutoff).reduce_at(sys_amplitudes, t, include_free_phase);
}

// Elementwise propagator with the mode sums cut at the same finite mode set:
// per mode, the conditional-displacement phase kernel (ωt − sin ωt)/ω² and the
// vacuum dephasing kernel (1 − cos ωt)/ω², combined with the raw couplings.
inline FockDensityMatrix analytic_truncated_reference(const FockDensityMatrix& rho0, double t,
                                                      const BathTruncation& trunc,
                                                      const DerivedParams& dp,
                                                      bool include_free_phase = false) {
  validate_density(rho0);
  detail::KahanSum s1, s2, sx, k1, k2, kx;
  for (int j = 0; j < trunc.n_modes; ++j) {
    const double w = trunc.omega[j];
    const double wt = w * t;
    const double kp = (wt - std::sin(wt)) / (w * w);
    const double kd = (1.0 - std::cos(wt)) / (w * w);
    const double a = trunc.g1[j], b = trunc.g2[j];
    s1.add(kp * a * a);
    s2.add(kp * b * b);
    sx.add(kp * a * b);
    k1.add(kd * a * a);
    k2.add(kd * b * b);
    kx.add(kd * a * b);
  }
  const double free_phi = include_free_phase ? reduce_angle(dp.device.Omega_b * t) : 0.0;

  const int side = rho0.side();
  FockDensityMatrix out(rho0.cutoff);
  for (int n1 = 0; n1 < side; ++n1)
    for (int n2 = 0; n2 < side; ++n2)
      for (int m1 = 0; m1 < side; ++m1)
        for (int m2 = 0; m2 < side; ++m2) {
          const int dn1 = n1 - m1, dn2 = n2 - m2;
          const double phase = s1.s * (n1 + m1 + 1) * dn1 + s2.s * (n2 + m2 + 1) * dn2 +
                               sx.s * ((n1 + m1 + 1) * dn2 + (n2 + m2 + 1) * dn1) -
                               free_phi * (dn1 + dn2);
          const double damp = k1.s * dn1 * dn1 + k2.s * dn2 * dn2 + 2.0 * kx.s * dn1 * dn2;
          std::complex<double> f = 0.0;
          if (damp <= 700.0) f = std::exp(-damp) * std::polar(1.0, phase);
          out.rho(out.index(n1, n2), out.index(m1, m2)) =
              f * rho0.rho(rho0.index(n1, n2), rho0.index(m1, m2));
        }
  return out;
}

}  // namespace stripbath
