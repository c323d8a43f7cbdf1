// model.hpp — device geometry → derived/dimensionless quantities and
// oscillator–strip couplings.
//
// Two LC oscillators sit a distance D apart on an elastic strip of length L
// held at tensile force F. The strip's harmonic modes ω_j = j·ω₁ form the
// bath; everything downstream is controlled by the dimensionless coupling λ,
// the scaled separation σ = πD/L, and the dimensionless inverse temperature Θ.
#pragma once

#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"

namespace stripbath {

struct DeviceParams {
  double rho_m = 1e3;            // mass density, kg/m³
  double F = 1e-5;               // tensile force, N
  double W = 1e-6;               // strip width, m
  double T_thick = 1e-7;         // strip thickness, m
  double L = 2e-2;               // strip length, m
  double dL = 1e-6;              // capacitor segment length, m
  double d_gap = 1e-7;           // vacuum gap, m
  double Omega_b = two_pi * 15e9;  // LC angular frequency, rad/s
  double D = 1e-2;               // capacitor separation, m
  double temperature = 0.03;     // bath temperature, K (0 = ground-state bath)
};

// Reference silicon-nitride string device; these are also the DeviceParams
// defaults above.
inline DeviceParams default_device() { return {}; }

// Hard errors throw; soft issues are returned as human-readable warnings.
inline std::vector<std::string> validate(const DeviceParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("device parameter must be positive: ") + name);
  };
  positive(p.rho_m, "rho_m");
  positive(p.F, "F");
  positive(p.W, "W");
  positive(p.T_thick, "T_thick");
  positive(p.L, "L");
  positive(p.dL, "dL");
  positive(p.d_gap, "d_gap");
  positive(p.Omega_b, "Omega_b");
  positive(p.D, "D");
  if (!(p.temperature >= 0.0) || !std::isfinite(p.temperature))
    throw ValidationError("device parameter must be nonnegative: temperature");
  if (!(p.D < p.L)) throw ValidationError("device geometry requires D < L");

  std::vector<std::string> warnings;
  if (!(p.dL < p.L / 100.0))
    warnings.push_back("dL is not small against L (expected dL < L/100); "
                       "the point-like limit may be inaccurate");
  return warnings;
}

struct DerivedParams {
  double m = 0.0;        // modal effective mass, kg
  double omega1 = 0.0;   // fundamental angular frequency, rad/s
  double v_ph = 0.0;     // phonon speed, m/s
  double lambda = 0.0;   // dimensionless coupling constant
  double sigma = 0.0;    // scaled separation πD/L, rad
  std::optional<double> theta;  // βħω₁; empty = zero-temperature bath
  double dt_causal = 0.0;       // phonon travel time D/v_ph, s
  DeviceParams device;          // originating device

  bool zero_temperature() const { return !theta.has_value(); }
};

inline DerivedParams derive(const DeviceParams& p) {
  validate(p);
  DerivedParams d;
  d.device = p;
  d.m = 0.5 * p.rho_m * p.W * p.T_thick * p.L;
  d.omega1 = pi * std::sqrt(p.F / (2.0 * d.m * p.L));
  d.v_ph = std::sqrt(p.F * p.L / (2.0 * d.m));
  d.lambda = p.Omega_b * p.Omega_b * hbar /
             (16.0 * p.d_gap * p.d_gap * d.m * d.omega1 * d.omega1 * d.omega1);
  d.sigma = pi * p.D / p.L;
  if (p.temperature > 0.0) d.theta = hbar * d.omega1 / (k_boltzmann * p.temperature);
  d.dt_causal = p.D / d.v_ph;
  return d;
}

// ω_j = j·ω₁: equally spaced strip-mode ladder.
inline double mode_frequency(int j, const DerivedParams& dp) {
  if (j < 1) throw ValidationError("mode index must be >= 1");
  return static_cast<double>(j) * dp.omega1;
}

enum class CouplingMode { point_like, sinc_regulated };

struct CouplingSpec {
  CouplingMode mode = CouplingMode::point_like;
  double dL = 0.0;  // capacitor segment length; used only when sinc_regulated

  static CouplingSpec point_like() { return {CouplingMode::point_like, 0.0}; }
  static CouplingSpec sinc_regulated(double dl) { return {CouplingMode::sinc_regulated, dl}; }
};

// Coupling rate between oscillator k ∈ {1,2} and strip mode j:
//   g_{k,j} = −(Ω_b/2d)·√(ħ/2mω_j)·[sinc(ω_j/ω_u)]·sin(πj(L∓D∓ΔL)/2L)
// with the upper sign for k = 1, ω_u = 2·v_ph/ΔL, and the bracket present only
// in the finite-segment (sinc-regulated) mode.
inline double coupling(int k, int j, const DerivedParams& dp, const CouplingSpec& spec) {
  if (k != 1 && k != 2) throw ValidationError("oscillator index must be 1 or 2");
  if (j < 1) throw ValidationError("mode index must be >= 1");
  const double wj = mode_frequency(j, dp);
  const DeviceParams& dev = dp.device;

  double dl = 0.0;
  double regulator = 1.0;
  if (spec.mode == CouplingMode::sinc_regulated) {
    if (!(spec.dL > 0.0)) throw ValidationError("sinc-regulated coupling needs dL > 0");
    dl = spec.dL;
    const double omega_u = 2.0 * dp.v_ph / dl;
    const double x = wj / omega_u;
    regulator = (x == 0.0) ? 1.0 : std::sin(x) / x;
  }

  const double sgn = (k == 1) ? -1.0 : 1.0;
  const double arg = pi * j * (dev.L + sgn * (dev.D + dl)) / (2.0 * dev.L);
  return -(dev.Omega_b / (2.0 * dev.d_gap)) * std::sqrt(hbar / (2.0 * dp.m * wj)) *
         regulator * std::sin(arg);
}

// --- device parameter file: flat `name = value` lines, `#` comments ---------

inline void set_device_field(DeviceParams& p, const std::string& key, double value) {
  if (key == "rho_m") p.rho_m = value;
  else if (key == "F") p.F = value;
  else if (key == "W") p.W = value;
  else if (key == "T_thick") p.T_thick = value;
  else if (key == "L") p.L = value;
  else if (key == "dL") p.dL = value;
  else if (key == "d_gap") p.d_gap = value;
  else if (key == "Omega_b") p.Omega_b = value;
  else if (key == "D") p.D = value;
  else if (key == "temperature") p.temperature = value;
  else throw ValidationError("unknown device parameter: " + key);
}

inline double parse_number(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw ValidationError("not a number: '" + text + "'");
  return v;
}

inline DeviceParams load_device_file(std::istream& in, DeviceParams base = default_device()) {
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("device file line " + std::to_string(lineno) +
                            ": expected 'name = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ValidationError("device file line " + std::to_string(lineno) +
                            ": expected 'name = value'");
    set_device_field(base, key, parse_number(val));
  }
  return base;
}

}  // namespace stripbath
