// Tests for the brute-force validation path: structure of the truncated
// joint Hamiltonian, exact-diagonalization evolution against the analytic
// elementwise factors on the same finite mode set, bath-cutoff convergence,
// and recovery of the closed-form propagator as the mode count grows.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <stripbath/oracle.hpp>

using namespace stripbath;
using cplx = std::complex<double>;

namespace {

DerivedParams paper_device() { return derive(default_device()); }

DerivedParams cold_device() {
  auto p = default_device();
  p.temperature = 0.0;
  return derive(p);
}

std::vector<cplx> plus_plus_amplitudes() { return std::vector<cplx>(4, cplx(0.5, 0.0)); }

std::vector<cplx> normalized(std::vector<cplx> v) {
  double n2 = 0.0;
  for (const auto& c : v) n2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

double max_diff(const FockDensityMatrix& a, const FockDensityMatrix& b) {
  REQUIRE(a.dim() == b.dim());
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a.rho(i, j) - b.rho(i, j)));
  return m;
}

// Σ_{j>J} 1/j² (Euler–Maclaurin), the non-oscillating tail the finite mode
// set omits from the self-phase sum
double zeta2_tail(long j_max) {
  const double J = static_cast<double>(j_max);
  return 1.0 / J - 1.0 / (2.0 * J * J) + 1.0 / (6.0 * J * J * J);
}

}  // namespace

TEST_CASE("decoupled bath gives a diagonal free hamiltonian") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(1, 5, dp, 0.0);
  const auto h = build_hamiltonian(t, dp, 1);
  const int b_dim = 6;
  REQUIRE(h.n == 4 * b_dim);
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j)
      if (i != j) REQUIRE(h(i, j) == 0.0);
  for (int s = 0; s < 4; ++s) {
    const int n1 = s / 2, n2 = s % 2;
    for (int m = 0; m <= 5; ++m) {
      const double expected = dp.device.Omega_b * (n1 + n2 + 1.0) + dp.omega1 * (m + 0.5);
      CHECK_THAT(h(s * b_dim + m, s * b_dim + m), Catch::Matchers::WithinRel(expected, 1e-15));
    }
  }
}

TEST_CASE("hamiltonian is symmetric and photon-sector block diagonal") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(2, 3, dp);
  const auto h = build_hamiltonian(t, dp, 1);
  const int b_dim = 16;
  REQUIRE(h.n == 4 * b_dim);
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j) {
      REQUIRE(h(i, j) == h(j, i));
      if (i / b_dim != j / b_dim) REQUIRE(h(i, j) == 0.0);  // photon number conserved
    }
  // couplings enter linearly in the mode ladder: check one matrix element
  const double g_sum = 0.5 * (t.g1[0] + t.g2[0]);  // sector (0,0), mode 1
  CHECK_THAT(h(1, 0), Catch::Matchers::WithinRel(g_sum, 1e-15));
  CHECK_THAT(h(2, 1), Catch::Matchers::WithinRel(g_sum * std::sqrt(2.0), 1e-15));
}

TEST_CASE("ground sector energy matches the displaced-oscillator shift") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(1, 40, dp);
  const OracleEvolver ev(t, dp, 1);
  const auto& eig = ev.sector_eigensystem(0, 0);
  const double force = 0.5 * (t.g1[0] + t.g2[0]);
  const double expected = 0.5 * t.omega[0] - force * force / t.omega[0];
  CHECK_THAT(eig.values.front(), Catch::Matchers::WithinRel(expected, 1e-8));
}

TEST_CASE("sector eigenbasis reconstructs its block") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(2, 8, dp);
  const OracleEvolver ev(t, dp, 1);
  const auto block = stripbath::detail::sector_block(t, 1, 0);
  const auto& eig = ev.sector_eigensystem(1, 0);
  const int n = block.n;
  double resid = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double rec = 0.0;
      for (int k = 0; k < n; ++k) rec += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
      resid += (rec - block(i, j)) * (rec - block(i, j));
    }
  CHECK(std::sqrt(resid) <= 1e-10 * frobenius_norm(block));
}

TEST_CASE("initial time reduces to the initial projector") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(2, 6, dp);
  const auto psi = normalized({cplx(0.6, 0.0), cplx(0.0, 0.48), cplx(-0.4, 0.1), cplx(0.5, -0.2)});
  const auto rho = evolve_and_reduce(psi, 0.0, t, dp);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(rho.rho(i, j) - psi[i] * std::conj(psi[j])) <= 1e-12);
}

TEST_CASE("photon populations stay constant") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(1, 25, dp);
  const OracleEvolver ev(t, dp, 1);
  const auto psi = normalized({cplx(0.6, 0.0), cplx(0.0, 0.48), cplx(-0.4, 0.1), cplx(0.5, -0.2)});
  for (double time : {0.0, 3.1e-5, 2.0 * pi / dp.omega1}) {
    const auto rho = ev.reduce_at(psi, time);
    validate_density(rho);
    for (int i = 0; i < 4; ++i)
      CHECK_THAT(rho.rho(i, i).real(), Catch::Matchers::WithinAbs(std::norm(psi[i]), 1e-10));
  }
}

TEST_CASE("brute force agrees with the analytic factors") {
  const auto dp = paper_device();
  std::mt19937 rng(20250816u);
  std::uniform_real_distribution<double> ut(0.0, 2.0 * pi / dp.omega1);

  for (int n_modes : {1, 2}) {
    const int n_max = (n_modes == 1) ? 30 : 14;
    const auto t = make_bath_truncation(n_modes, n_max, dp);
    const OracleEvolver ev(t, dp, 1);
    const auto rho0 = plus_plus_state();
    for (int rep = 0; rep < 5; ++rep) {
      const double time = ut(rng);
      const auto num = ev.reduce_at(plus_plus_amplitudes(), time);
      const auto ref = analytic_truncated_reference(rho0, time, t, dp);
      CHECK(max_diff(num, ref) <= 1e-6);
    }
    // local oscillator phase included on both sides
    const auto num = ev.reduce_at(plus_plus_amplitudes(), 2.7e-5, true);
    const auto ref = analytic_truncated_reference(rho0, 2.7e-5, t, dp, true);
    CHECK(max_diff(num, ref) <= 1e-6);
  }
}

TEST_CASE("bath cutoff is converged") {
  const auto dp = paper_device();
  const double time = 0.7 * 2.0 * pi / dp.omega1;
  const auto psi = plus_plus_amplitudes();
  const auto lo = evolve_and_reduce(psi, time, make_bath_truncation(2, 14, dp), dp);
  const auto hi = evolve_and_reduce(psi, time, make_bath_truncation(2, 18, dp), dp);
  CHECK(max_diff(lo, hi) <= 1e-8);
}

TEST_CASE("analytic reference is the identity map at time zero") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(3, 4, dp);
  const auto rho0 = plus_plus_state();
  const auto out = analytic_truncated_reference(rho0, 0.0, t, dp);
  CHECK(max_diff(out, rho0) <= 1e-15);
}

TEST_CASE("analytic reference preserves density-matrix structure") {
  const auto dp = paper_device();
  const auto t = make_bath_truncation(4, 4, dp);
  const auto rho0 = plus_plus_state();
  const auto out = analytic_truncated_reference(rho0, 3.3e-5, t, dp);
  validate_density(out);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(out.rho(i, i) - rho0.rho(i, i)) <= 1e-14);
}

TEST_CASE("single kept mode carries a cross phase before the transit time") {
  // with few modes the cross phase starts immediately; only the full mode sum
  // cancels it for τ < σ
  const auto dp = cold_device();
  const auto t = make_bath_truncation(1, 4, dp);
  const double tau = 1.0;  // below the transit time σ = πD/L ≈ 1.571
  REQUIRE(tau < dp.sigma);
  const auto out = analytic_truncated_reference(plus_plus_state(), tau / dp.omega1, t, dp);
  const auto arg_of = [&](int n1, int n2) {
    return std::arg(out.rho(out.index(n1, n2), out.index(0, 0)) / 0.25);
  };
  const double p2_one_mode = 0.5 * (arg_of(1, 1) - arg_of(1, 0) - arg_of(0, 1));
  CHECK(std::abs(p2_one_mode) > 1e-3);
  const auto cfg = make_config(dp);
  CHECK_THAT(p2_one_mode, Catch::Matchers::WithinAbs(p_mode_sum(PhaseTerm::p2, tau, cfg, 1), 1e-9));
  CHECK(std::abs(p2_closed(tau, cfg)) < 1e-12);  // the closed form is silent here
}

TEST_CASE("large mode count recovers the closed-form propagator") {
  const auto dp = cold_device();
  const long n_modes = 600'000;
  const auto t = make_bath_truncation(static_cast<int>(n_modes), 2, dp);
  const double tau = 2.0;
  const auto rho0 = plus_plus_state();
  const auto ref = analytic_truncated_reference(rho0, tau / dp.omega1, t, dp);
  const auto closed = propagate(rho0, tau, make_config(dp), ModeSumPolicy::tolerance(1e-12));
  // the finite mode set omits the non-oscillating λτ·Σ_{j>J}1/j² piece of the
  // self phase; remove it from the closed form before comparing
  const double missing_p1 = dp.lambda * tau * zeta2_tail(n_modes);
  double worst = 0.0;
  for (int n1 = 0; n1 < 2; ++n1)
    for (int n2 = 0; n2 < 2; ++n2)
      for (int m1 = 0; m1 < 2; ++m1)
        for (int m2 = 0; m2 < 2; ++m2) {
          const int wp1 = (n1 + m1 + 1) * (n1 - m1) + (n2 + m2 + 1) * (n2 - m2);
          const cplx expect = closed.rho(closed.index(n1, n2), closed.index(m1, m2)) *
                              std::polar(1.0, -missing_p1 * wp1);
          worst = std::max(worst, std::abs(ref.rho(ref.index(n1, n2), ref.index(m1, m2)) - expect));
        }
  CHECK(worst <= 1e-8);
}

TEST_CASE("guards reject unusable truncations and states") {
  const auto dp = paper_device();
  CHECK_THROWS_AS(make_bath_truncation(0, 5, dp), ValidationError);
  CHECK_THROWS_AS(make_bath_truncation(1, 0, dp), ValidationError);
  // conditional displacement too large for the Fock cutoff
  CHECK_THROWS_AS(make_bath_truncation(1, 1, dp, 20.0), ValidationError);
  // joint dimension beyond the guard: 4·32³ > 1e5
  const auto big = make_bath_truncation(3, 31, dp);
  CHECK_THROWS_AS(build_hamiltonian(big, dp, 1), ResourceError);
  CHECK_THROWS_AS(OracleEvolver(big, dp, 1), ResourceError);

  const auto t = make_bath_truncation(1, 5, dp);
  CHECK_THROWS_AS(evolve_and_reduce({cplx(1.0, 0.0)}, 0.0, t, dp), ValidationError);
  CHECK_THROWS_AS(evolve_and_reduce(std::vector<cplx>(4, cplx(0.5, 0.5)), 0.0, t, dp),
                  ValidationError);
}
