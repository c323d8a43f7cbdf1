// specfun.hpp — polylogarithms Li_s(e^{iθ}) on the unit circle, s = 2, 3.
//
// The three real building blocks are the trigonometric series
//     sl2(θ) = Σ_{n≥1} cos(nθ)/n²  = Re Li₂(e^{iθ})
//     sl3(θ) = Σ_{n≥1} sin(nθ)/n³  = Im Li₃(e^{iθ})
//     cl3(θ) = Σ_{n≥1} cos(nθ)/n³  = Re Li₃(e^{iθ})
// sl2/sl3 reduce to exact cubic polynomials on one period; cl3 is transcendental
// and is evaluated by a fast zeta-series expansion accurate to full double
// precision, so a call costs a short fixed-length polynomial evaluation rather
// than an O(10⁶)-term sum.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include "constants.hpp"
#include "errors.hpp"

namespace stripbath {

// theta mod 2π, result in [0, 2π). Non-finite input is rejected.
inline double reduce_angle(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("reduce_angle: non-finite angle");
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;  // fmod rounding can land exactly on 2π
  return r;
}

// Re Li₂(e^{iθ}): exact polynomial π²/6 − πθ/2 + θ²/4 on [0, 2π).
inline double sl2(double theta) {
  const double t = reduce_angle(theta);
  return pi * pi / 6.0 - 0.5 * pi * t + 0.25 * t * t;
}

// Im Li₃(e^{iθ}): exact polynomial π²θ/6 − πθ²/4 + θ³/12 on [0, 2π).
inline double sl3(double theta) {
  const double t = reduce_angle(theta);
  return t * (pi * pi / 6.0 + t * (-0.25 * pi + t / 12.0));
}

namespace detail {

// Coefficients c_m = 2 ζ(2m−2) / ((2m)(2m−1)(2m−2)) for m = 2, 3, ... used in
// the expansion below. 28 terms give < 1e−18 truncation error at θ = π (the
// worst case after folding).
inline constexpr double cl3_series_coeff[] = {
    1.37077838904018870e-1,   // m=2
    1.80387205618523032e-2,   // m=3
    6.05561346419314964e-3,   // m=4
    2.78910376721651205e-3,   // m=5
    1.51665844716336074e-3,   // m=6
    9.15976269737461583e-4,   // m=7
    5.95274552461344467e-4,   // m=8
    4.08502974779170201e-4,   // m=9
    2.92398776986334795e-4,   // m=10
    2.16450422935505167e-4,   // m=11
    1.64690421352190831e-4,   // m=12
    1.28205135847203725e-4,   // m=13
    1.01750103266336470e-4,   // m=14
    8.21018065455939265e-5,   // m=15
    6.72043011378580264e-5,   // m=16
    5.57040998347165321e-5,   // m=17
    4.66853408057053091e-5,   // m=18
    3.95131974085092430e-5,   // m=19
    3.37381916330512139e-5,   // m=20
    2.90360046457871514e-5,   // m=21
    2.51686298197983332e-5,   // m=22
    2.19587176108927721e-5,   // m=23
    1.92722787542401752e-5,   // m=24
    1.70068027210884958e-5,   // m=25
    1.50829562594268611e-5,   // m=26
    1.34386926839757058e-5,   // m=27
    1.20250120250120257e-5,   // m=28
    1.08028692420706941e-5,   // m=29
};

// cl3 on the half period [0, π] via the log-singularity expansion
//   cl3(θ) = ζ(3) + θ²/2·(ln θ − 3/2) − θ² Σ_{m≥2} c_m u^{m−1},  u = (θ/2π)².
// This follows from integrating the classical Clausen Cl₂ expansion twice; each
// c_m carries ζ(2m−2), and u ≤ 1/4 on the fold so the tail decays by ≥ 4× per
// term.
inline double cl3_half_period(double t) {
  if (t == 0.0) return zeta3;
  const double u = (t / two_pi) * (t / two_pi);
  double tail = 0.0;
  double up = u;  // u^{m-1}
  for (double c : cl3_series_coeff) {
    tail += c * up;
    up *= u;
  }
  return zeta3 + 0.5 * t * t * (std::log(t) - 1.5) - t * t * tail;
}

}  // namespace detail

// Re Li₃(e^{iθ}); even about θ = π, so fold onto [0, π] first.
inline double cl3(double theta) {
  double t = reduce_angle(theta);
  if (t > pi) t = two_pi - t;
  return detail::cl3_half_period(t);
}

// Li_s(e^{iθ}) for s ∈ {2, 3}. For s = 2 the imaginary part (Clausen Cl₂) is
// never needed downstream and is reported as 0.
inline std::complex<double> li_unit(int s, double theta) {
  if (s == 2) return {sl2(theta), 0.0};
  if (s == 3) return {cl3(theta), sl3(theta)};
  throw ValidationError("li_unit: order must be 2 or 3");
}

}  // namespace stripbath
