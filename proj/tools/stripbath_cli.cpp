// stripbath — scenario runner emitting the dephasing/entanglement data sets
// as deterministic CSV, plus a quick self-check of the core invariants.
//
//   stripbath params  [--config FILE] [--set key=value ...] [--out PATH]
//   stripbath fig2    [--set lambda=.. sigma=..] [--tau-min --tau-max --samples] [--out PATH]
//   stripbath fig3    [--set sigma=..]           [--tau-min --tau-max --samples] [--out PATH]
//   stripbath fig4    [--config FILE] [--set key=value ...] [--tau-min --tau-max --samples] [--out PATH]
//   stripbath check   [--out PATH]
//
// Exit codes: 0 success, 1 validation error, 2 failed check / unreachable
// accuracy, 3 resource guard.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <stripbath/stripbath.hpp>

namespace {

using namespace stripbath;
using cplx = std::complex<double>;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw ValidationError("sweep needs at least 2 samples");
  if (!(lo < hi)) throw ValidationError("sweep needs tau-min < tau-max");
  if (lo < 0.0) throw ValidationError("sweep needs tau-min >= 0");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
  return g;
}

std::pair<std::string, double> split_override(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("override must look like key=value: '" + kv + "'");
  return {kv.substr(0, eq), parse_number(kv.substr(eq + 1))};
}

DeviceParams device_from(const std::string& config_path, const std::vector<std::string>& sets,
                         bool allow_temperature = true) {
  DeviceParams p = default_device();
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw ValidationError("cannot open config file: " + config_path);
    p = load_device_file(f, p);
  }
  for (const auto& kv : sets) {
    const auto [key, value] = split_override(kv);
    if (!allow_temperature && key == "temperature")
      throw ValidationError("this scenario sweeps its own temperature list");
    set_device_field(p, key, value);
  }
  return p;
}

DimensionlessConfig dimless_from(const std::vector<std::string>& sets, double lambda0,
                                 double sigma0, bool allow_lambda) {
  DimensionlessConfig cfg;
  cfg.lambda = lambda0;
  cfg.sigma = sigma0;
  for (const auto& kv : sets) {
    const auto [key, value] = split_override(kv);
    if (key == "lambda" && allow_lambda) cfg.lambda = value;
    else if (key == "sigma") cfg.sigma = value;
    else throw ValidationError("unknown dimensionless parameter: " + key);
  }
  validate_config(cfg);
  return cfg;
}

// ---------------------------------------------------------------- scenarios

std::string run_params(const DeviceParams& dev) {
  const auto dp = derive(dev);
  std::ostringstream out;
  out << "m = " << fmt(dp.m) << "              # effective mass, kg\n"
      << "omega1 = " << fmt(dp.omega1) << "         # fundamental mode, rad/s\n"
      << "v_ph = " << fmt(dp.v_ph) << "           # phonon speed, m/s\n"
      << "lambda = " << fmt(dp.lambda) << "         # dimensionless coupling\n"
      << "sigma = " << fmt(dp.sigma) << "          # scaled separation, rad\n"
      << "Theta = " << (dp.theta ? fmt(*dp.theta) : std::string("inf"))
      << "          # dimensionless inverse temperature\n"
      << "dt_causal = " << fmt(dp.dt_causal) << "      # phonon transit time, s\n"
      << "t_at_tau_2pi = " << fmt(two_pi / dp.omega1) << "   # rephasing time, s\n";
  return out.str();
}

std::string run_fig2(const DimensionlessConfig& cfg, const std::vector<double>& taus) {
  std::ostringstream out;
  out << "tau,p2_exact,p2_J1,p2_J5\n";
  for (double tau : taus)
    out << fmt(tau) << ',' << fmt(p2_closed(tau, cfg)) << ','
        << fmt(p_mode_sum(PhaseTerm::p2, tau, cfg, 1)) << ','
        << fmt(p_mode_sum(PhaseTerm::p2, tau, cfg, 5)) << '\n';
  return out.str();
}

std::string run_fig3(double sigma, const std::vector<double>& taus) {
  const std::vector<double> lambdas = {0.1, 0.2, 4.0 / (pi * pi), 1.0};
  std::vector<NegativitySeries> series;
  series.reserve(lambdas.size());
  for (double lam : lambdas) {
    DimensionlessConfig cfg;
    cfg.lambda = lam;
    cfg.sigma = sigma;
    series.push_back(
        negativity_curve(cfg, taus, plus_plus_state(), ModeSumPolicy::tolerance(1e-10)));
  }
  std::ostringstream out;
  out << "tau";
  for (double lam : lambdas) out << ",EN_lambda" << fmt_short(lam);
  out << '\n';
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out << fmt(taus[i]);
    for (const auto& s : series) out << ',' << fmt(s.values[i]);
    out << '\n';
  }
  return out.str();
}

std::string run_fig4(const DeviceParams& base, const std::vector<double>& taus) {
  const std::vector<double> temps = {0.01, 0.03, 0.1};
  std::vector<NegativitySeries> series;
  series.reserve(temps.size());
  for (double t : temps) {
    DeviceParams dev = base;
    dev.temperature = t;
    series.push_back(negativity_curve(make_config(derive(dev)), taus, plus_plus_state(),
                                      ModeSumPolicy::tolerance(1e-10)));
  }
  std::ostringstream out;
  out << "tau";
  for (double t : temps) out << ",EN_T" << fmt_short(t);
  out << '\n';
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out << fmt(taus[i]);
    for (const auto& s : series) out << ',' << fmt(s.values[i]);
    out << '\n';
  }
  return out.str();
}

// ------------------------------------------------------------------- check

struct CheckReport {
  std::ostringstream out;
  bool all_ok = true;
  void item(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << "  (" << detail << ")";
    out << '\n';
    all_ok = all_ok && ok;
  }
};

double zeta2_tail(long j_max) {
  const double J = static_cast<double>(j_max);
  return 1.0 / J - 1.0 / (2.0 * J * J) + 1.0 / (6.0 * J * J * J);
}

double circle_margin(double theta) {
  const double r = reduce_angle(theta);
  return std::min(r, two_pi - r);
}

// truncated zero-temperature dephasing sums, for closed-form comparison
double d_sum_zero(DephasingTerm which, double tau, const DimensionlessConfig& cfg, long j_max) {
  detail::KahanSum acc;
  const bool cross = (which == DephasingTerm::d2);
  for (long j = 1; j <= j_max; ++j) {
    const double dj = static_cast<double>(j);
    const double w = cross ? detail::weight_cross(static_cast<int>(j), cfg.sigma)
                           : detail::weight_self(static_cast<int>(j), cfg.sigma);
    acc.add((1.0 - std::cos(dj * tau)) / (dj * dj * dj) * w);
  }
  return (cross ? 2.0 : 1.0) * cfg.lambda * acc.s;
}

std::string run_check(bool& ok) {
  CheckReport rep;
  DimensionlessConfig unit;  // λ=1, σ=π/2

  {  // dilog/trilog values on the unit circle
    const double worst = std::max({
        std::abs(li_unit(2, 0.0).real() - pi * pi / 6.0),
        std::abs(li_unit(2, pi).real() + pi * pi / 12.0),
        std::abs(li_unit(3, 0.0).real() - zeta3),
        std::abs(li_unit(3, pi).real() + 0.75 * zeta3),
        std::abs(li_unit(3, pi / 2).real() + 3.0 / 32.0 * zeta3),
        std::abs(li_unit(3, pi / 2).imag() - pi * pi * pi / 32.0),
    });
    rep.item("polylog-unit-circle-identities", worst <= 1e-12, "worst " + fmt_short(worst));
  }

  {  // the cross phase stays silent before the transit time...
    double worst = 0.0, worst_j1 = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double tau = unit.sigma * i / 1001.0;
      worst = std::max(worst, std::abs(p2_closed(tau, unit)));
      worst_j1 = std::max(worst_j1, std::abs(p_mode_sum(PhaseTerm::p2, tau, unit, 1)));
    }
    rep.item("cross-phase-causality", worst < 1e-10, "worst " + fmt_short(worst));
    // ...while a single kept mode acts immediately
    rep.item("single-mode-acausality", worst_j1 > 0.01, "max " + fmt_short(worst_j1));
  }

  {  // dephasing vanishes at the rephasing times, at any temperature
    double worst = 0.0;
    const auto policy = ModeSumPolicy::tolerance(1e-10);
    for (int j = 1; j <= 3; ++j) {
      const double tau = two_pi * j;
      worst = std::max({worst, std::abs(d1_zero_t(tau, unit)), std::abs(d2_zero_t(tau, unit))});
      for (double theta : {10.0, 1.0, 1e-5}) {
        const auto cfg = [&] {
          auto c = unit;
          c.theta = theta;
          return c;
        }();
        worst = std::max({worst, std::abs(d_thermal(DephasingTerm::d1, tau, cfg, policy)),
                          std::abs(d_thermal(DephasingTerm::d2, tau, cfg, policy))});
      }
    }
    rep.item("rephasing-dephasing-vanishes", worst < 1e-9, "worst " + fmt_short(worst));
  }

  {  // closed forms against raw truncated sums
    std::mt19937 rng(411u);
    std::uniform_real_distribution<double> us(0.25, pi - 0.25);
    std::uniform_real_distribution<double> ut(0.1, 4 * pi - 0.1);
    const long j_max = 100'000;
    double worst = 0.0;
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
      double tau = 0.0, sigma = 0.0;
      for (;;) {
        sigma = us(rng);
        tau = ut(rng);
        const double args[] = {tau,       sigma,          sigma + pi,          tau + sigma,
                               tau - sigma, tau + pi,     tau + sigma + pi,    tau - sigma + pi};
        bool safe = true;
        for (double a : args) safe = safe && circle_margin(a) > 0.2;
        if (safe) break;
      }
      DimensionlessConfig cfg;
      cfg.sigma = sigma;
      const double tail1 = cfg.lambda * tau * zeta2_tail(j_max);
      worst = std::max(
          {worst,
           std::abs(p1_closed(tau, cfg) - p_mode_sum(PhaseTerm::p1, tau, cfg, j_max) - tail1),
           std::abs(p2_closed(tau, cfg) - p_mode_sum(PhaseTerm::p2, tau, cfg, j_max)),
           std::abs(d1_zero_t(tau, cfg) - d_sum_zero(DephasingTerm::d1, tau, cfg, j_max)),
           std::abs(d2_zero_t(tau, cfg) - d_sum_zero(DephasingTerm::d2, tau, cfg, j_max))});
    }
    rep.item("closed-form-vs-mode-sum", worst <= 1e-8, "worst " + fmt_short(worst));
  }

  {  // negativity at the rephasing times follows the pure-state law
    double worst = 0.0;
    for (double lam : {4.0 / (pi * pi), 1.0})
      for (double sigma : {pi / 2, 3 * pi / 4}) {
        DimensionlessConfig cfg;
        cfg.lambda = lam;
        cfg.sigma = sigma;
        const auto st = propagate(plus_plus_state(), two_pi, cfg, ModeSumPolicy::tolerance(1e-10));
        const double expect =
            std::log2(1.0 + std::abs(std::sin(lam * pi * (pi - sigma) * (pi - sigma) / 2.0)));
        worst = std::max(worst, std::abs(log_negativity(st) - expect));
      }
    rep.item("rephasing-negativity-law", worst <= 1e-6, "worst " + fmt_short(worst));
  }

  {  // brute-force joint evolution against the analytic factors
    const auto dp = derive(default_device());
    double worst = 0.0;
    for (int n_modes : {1, 2}) {
      const int n_max = (n_modes == 1) ? 30 : 10;
      const auto trunc = make_bath_truncation(n_modes, n_max, dp);
      const OracleEvolver ev(trunc, dp, 1);
      const auto rho0 = plus_plus_state();
      for (double frac : {0.37, 0.81}) {
        const double t = frac * two_pi / dp.omega1;
        const auto num = ev.reduce_at(std::vector<cplx>(4, cplx(0.5, 0.0)), t);
        const auto ref = analytic_truncated_reference(rho0, t, trunc, dp);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(num.rho(i, j) - ref.rho(i, j)));
      }
    }
    rep.item("brute-force-vs-analytic", worst <= 1e-6, "worst " + fmt_short(worst));
  }

  ok = rep.all_ok;
  return rep.out.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f << content;
  f.flush();
  if (!f) {
    f.close();
    std::remove(path.c_str());
    throw ResourceError("failed while writing " + path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-oscillator strip-bath dynamics: figure data and self-checks"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::vector<std::string> sets;
  double tau_min = -1.0, tau_max = -1.0;  // -1 = scenario default
  int samples = 0;

  auto add_sweep = [&](CLI::App* s) {
    s->add_option("--tau-min", tau_min, "sweep start (dimensionless time)");
    s->add_option("--tau-max", tau_max, "sweep end");
    s->add_option("--samples", samples, "number of grid points");
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", out_path, "output file"); };
  auto add_sets = [&](CLI::App* s) {
    s->add_option("--set", sets, "override, key=value (repeatable)");
  };

  auto* sc_params = app.add_subcommand("params", "print derived device parameters");
  sc_params->add_option("--config", config_path, "device parameter file");
  add_sets(sc_params);
  add_out(sc_params);

  auto* sc_fig2 = app.add_subcommand("fig2", "cross phase: exact vs truncated mode sums");
  add_sets(sc_fig2);
  add_sweep(sc_fig2);
  add_out(sc_fig2);

  auto* sc_fig3 = app.add_subcommand("fig3", "negativity curves for several couplings, zero T");
  add_sets(sc_fig3);
  add_sweep(sc_fig3);
  add_out(sc_fig3);

  auto* sc_fig4 = app.add_subcommand("fig4", "negativity near the rephasing time vs temperature");
  sc_fig4->add_option("--config", config_path, "device parameter file");
  add_sets(sc_fig4);
  add_sweep(sc_fig4);
  add_out(sc_fig4);

  auto* sc_check = app.add_subcommand("check", "run the invariant self-check suite");
  add_out(sc_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sc_params->parsed()) {
      write_output(out_path, run_params(device_from(config_path, sets)));
    } else if (sc_fig2->parsed()) {
      const auto cfg = dimless_from(sets, 1.0, pi / 2, true);
      const auto taus = linspace(tau_min < 0 ? 0.0 : tau_min, tau_max < 0 ? 4 * pi : tau_max,
                                 samples > 0 ? samples : 801);
      write_output(out_path.empty() ? "fig2.csv" : out_path, run_fig2(cfg, taus));
    } else if (sc_fig3->parsed()) {
      const auto cfg = dimless_from(sets, 1.0, pi / 2, false);  // λ list is fixed
      const auto taus = linspace(tau_min < 0 ? 0.0 : tau_min, tau_max < 0 ? 4 * pi : tau_max,
                                 samples > 0 ? samples : 801);
      write_output(out_path.empty() ? "fig3.csv" : out_path, run_fig3(cfg.sigma, taus));
    } else if (sc_fig4->parsed()) {
      const auto dev = device_from(config_path, sets, /*allow_temperature=*/false);
      const auto taus = linspace(tau_min < 0 ? two_pi - 0.5 : tau_min,
                                 tau_max < 0 ? two_pi + 0.5 : tau_max,
                                 samples > 0 ? samples : 2000);
      write_output(out_path.empty() ? "fig4.csv" : out_path, run_fig4(dev, taus));
    } else if (sc_check->parsed()) {
      bool ok = false;
      const auto report = run_check(ok);
      write_output(out_path, report);
      if (!ok) return 2;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
