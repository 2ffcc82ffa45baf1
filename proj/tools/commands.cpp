#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iostream>

#include "gravsim/measurement.hpp"
#include "gravsim/noise.hpp"
#include "gravsim/twolevel.hpp"
#include "io.hpp"

namespace gravsim::cli {

namespace {

void read_constants(RunConfig& config) {
  PhysicalConstants c;
  c.hbar = config.number("constants.hbar", kDefaultHbar);
  c.atom_mass = config.number("constants.mass", kDefaultAtomMass);
  c.default_g = config.number("constants.g", kDefaultG);
  c.validate();
}

FrequencyUnit read_unit(RunConfig& config, const std::string& key) {
  const std::string u = config.text(key, "rad_per_s");
  if (u == "rad_per_s") return FrequencyUnit::RadPerSecond;
  if (u == "hz") return FrequencyUnit::Hertz;
  throw ConfigError(fmt::format("[{}] = '{}': expected rad_per_s or hz", key, u));
}

bool read_two_sided(RunConfig& config, const std::string& key) {
  const std::string s = config.text(key, "one");
  if (s == "one") return false;
  if (s == "two") return true;
  throw ConfigError(fmt::format("[{}] = '{}': expected one or two", key, s));
}

measurement::ScanConfig read_scan(RunConfig& config, const std::string& section) {
  measurement::ScanConfig scan;
  scan.k_eff = config.number(section + ".k_eff", kDefaultKeff);
  scan.g_true = config.number(section + ".g_true", config.number("constants.g", kDefaultG));
  scan.T = config.number(section + ".T", 0.1);
  scan.dphi_laser = config.number(section + ".dphi_laser", 0.0);
  scan.n_atoms = config.count(section + ".n_atoms", 0);
  scan.seed = config.count(section + ".seed", 0);
  return scan;
}

Summary estimate_summary(const measurement::GravityEstimate& e, double g_true) {
  return {{"g_hat", num(e.g_hat)},
          {"sigma_g", num(e.sigma_g)},
          {"g_true", num(g_true)},
          {"relative_error", num((e.g_hat - g_true) / g_true)},
          {"beta_null", num(e.beta_null)},
          {"sigma_beta", num(e.sigma_beta)},
          {"fit_residual", num(e.fit_residual)},
          {"offset", num(e.offset)},
          {"amplitude", num(e.amplitude)},
          {"iterations", std::to_string(e.iterations)}};
}

void write_scan(const std::filesystem::path& path, const std::string& header,
                const measurement::FringeScan& scan) {
  write_csv(path, header, {"beta", "p_ideal", "p_measured"},
            {scan.betas, scan.probabilities, scan.measured});
}

}  // namespace

void cmd_rabi(RunConfig& config, const Options& options) {
  read_constants(config);
  PulseParams pulse;
  pulse.rabi_mod = config.required_number("rabi.rabi");
  pulse.rabi_arg = config.number("rabi.rabi_phase", 0.0);
  pulse.detuning = config.number("rabi.detuning", 0.0);
  pulse.laser_phase = config.number("rabi.phase", 0.0);
  const double omega_r = std::hypot(pulse.rabi_mod, pulse.detuning);
  const double duration = omega_r > 0.0 ? config.number("rabi.duration", kTwoPi / omega_r)
                                         : config.required_number("rabi.duration");
  const std::uint64_t n = config.count("rabi.n_points", 201);
  const double dt = config.number("rabi.dt", omega_r > 0.0 ? kPi / (100.0 * omega_r)
                                                          : duration / static_cast<double>(std::max<std::uint64_t>(n, 2) - 1));
  config.reject_unknown({"constants", "rabi"});
  pulse.validate();
  if (n < 2) throw ConfigError("[rabi] n_points must be >= 2");
  if (!(duration > 0.0)) throw ConfigError("[rabi] duration must be > 0");

  std::vector<double> t(n), closed(n), oracle(n);
  TwoLevelState state = TwoLevelState::ground();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = duration * static_cast<double>(i) / static_cast<double>(n - 1);
    PulseParams full = pulse;
    full.start_time = 0.0;
    full.duration = t[i];
    closed[i] = std::norm(twolevel::evolve_pulse(TwoLevelState::ground(), full).c_b);
    if (i > 0) {
      PulseParams step = pulse;
      step.start_time = t[i - 1];
      step.duration = t[i] - t[i - 1];
      state = twolevel::ode_oracle(state, step, dt);
    }
    oracle[i] = std::norm(state.c_b);
    worst = std::max(worst, std::abs(closed[i] - oracle[i]));
  }
  const std::string header = echo_header("rabi", config);
  write_csv(options.out_dir / "rabi.csv", header, {"t", "p_closed", "p_oracle"}, {t, closed, oracle});
  write_summary(options.out_dir / "rabi_summary.txt", header,
                {{"omega_r", num(omega_r)}, {"points", std::to_string(n)}, {"max_discrepancy", num(worst)}});
}

void cmd_fringe(RunConfig& config, const Options& options) {
  read_constants(config);
  measurement::ScanConfig scan = read_scan(config, "fringe");
  scan.beta_center = config.number("fringe.beta_center", 0.0);
  scan.span_periods = config.number("fringe.span_periods", 2.0);
  scan.n_points = config.count("fringe.n_points", 50);
  config.reject_unknown({"constants", "fringe"});

  const measurement::FringeScan result = measurement::simulate_scan(scan);
  measurement::FitOptions fit;
  fit.dphi_laser = scan.dphi_laser;
  const measurement::GravityEstimate est = measurement::estimate_g(result, scan.k_eff, scan.T, fit);
  const std::string header = echo_header("fringe", config);
  write_scan(options.out_dir / "fringe.csv", header, result);
  write_summary(options.out_dir / "fringe_summary.txt", header, estimate_summary(est, scan.g_true));
}

void cmd_gsweep(RunConfig& config, const Options& options) {
  read_constants(config);
  const measurement::ScanConfig scan = read_scan(config, "gsweep");
  const double lo = config.required_number("gsweep.beta_min");
  const double hi = config.required_number("gsweep.beta_max");
  const std::uint64_t n = config.count("gsweep.n_points", 200);
  config.reject_unknown({"constants", "gsweep"});
  if (!(hi > lo) || n < 4) throw ConfigError("[gsweep] needs beta_max > beta_min and n_points >= 4");

  std::vector<double> betas(n);
  for (std::size_t i = 0; i < n; ++i) betas[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  const measurement::FringeScan result = measurement::simulate_scan(betas, scan);
  measurement::FitOptions fit;
  fit.dphi_laser = scan.dphi_laser;
  const measurement::GravityEstimate est = measurement::estimate_g(result, scan.k_eff, scan.T, fit);
  const std::string header = echo_header("gsweep", config);
  write_scan(options.out_dir / "gsweep.csv", header, result);
  write_summary(options.out_dir / "gsweep_summary.txt", header, estimate_summary(est, scan.g_true));
}

void cmd_allan(RunConfig& config, const Options& options) {
  const noise::TimeSeries series = read_series(config.file("allan.series_file"));
  const auto per_decade = config.count("allan.points_per_decade", 10);
  noise::AllanOptions opt;
  opt.overlapping = config.flag("allan.overlapping", false);
  std::vector<double> taus = config.numbers("allan.taus");
  config.reject_unknown({"allan"});
  if (taus.empty()) taus = noise::log_tau_grid(series, static_cast<int>(per_decade));

  const noise::AllanResult r = noise::allan_deviation(series, taus, opt);
  for (double t : r.skipped) {
    std::cerr << fmt::format("skipped tau = {} s: fewer than 2 blocks\n", num(t));
  }
  std::vector<double> blocks(r.n_blocks.begin(), r.n_blocks.end());
  const std::string header = echo_header("allan", config);
  write_csv(options.out_dir / "allan.csv", header, {"tau", "adev", "n_blocks"}, {r.tau_avgs, r.adevs, blocks},
            {2});

  std::string slope = "undefined";
  const bool positive = std::all_of(r.adevs.begin(), r.adevs.end(), [](double a) { return a > 0.0; });
  if (r.adevs.size() >= 2 && positive) slope = num(noise::loglog_slope(r.tau_avgs, r.adevs));
  write_summary(options.out_dir / "allan_summary.txt", header,
                {{"samples", std::to_string(series.samples.size())},
                 {"dt", num(series.dt)},
                 {"points", std::to_string(r.tau_avgs.size())},
                 {"skipped", std::to_string(r.skipped.size())},
                 {"loglog_slope", slope}});
}

void cmd_sensitivity(RunConfig& config, const Options& options) {
  if (options.paper_gs) config.set("sensitivity.form", "printed");
  const double T = config.required_number("sensitivity.T");
  const double tau_p = config.required_number("sensitivity.tau_p");
  const std::string form_name = config.text("sensitivity.form", "symmetric");
  const auto n_time = config.count("sensitivity.n_time", 2001);
  const auto oversample = config.count("sensitivity.oversample", 8);
  const double omega_max = config.number("sensitivity.omega_max", kTwoPi * 20.0 / T);
  config.reject_unknown({"sensitivity"});
  noise::SensitivityForm form = noise::SensitivityForm::Symmetric;
  if (form_name == "printed") {
    form = noise::SensitivityForm::Printed;
  } else if (form_name != "symmetric") {
    throw ConfigError(fmt::format("[sensitivity] form = '{}': expected symmetric or printed", form_name));
  }
  if (n_time < 2 || oversample < 1) throw ConfigError("[sensitivity] needs n_time >= 2 and oversample >= 1");
  const noise::SensitivityProfile profile = noise::SensitivityProfile::from_pulse(T, tau_p);

  std::vector<double> t(n_time), g(n_time);
  for (std::size_t i = 0; i < n_time; ++i) {
    t[i] = profile.duration() * static_cast<double>(i) / static_cast<double>(n_time - 1);
    g[i] = noise::sensitivity_g(t[i], profile, form);
  }
  // Linear grid with spacing 2 pi / (oversample T), so w T = 2 pi is a grid point.
  const double dw = kTwoPi / (static_cast<double>(oversample) * T);
  std::vector<double> w, numeric, analytic, square;
  for (std::size_t k = 1; static_cast<double>(k) * dw <= omega_max * (1.0 + 1e-12); ++k) {
    const double omega = static_cast<double>(k) * dw;
    w.push_back(omega);
    numeric.push_back(noise::transfer_function(omega, profile));
    analytic.push_back(std::abs(noise::transfer_function_analytic(omega, profile)));
    square.push_back(noise::transfer_function_square(omega, T));
  }
  const std::string header = echo_header("sensitivity", config);
  write_csv(options.out_dir / "sensitivity.csv", header, {"t", "g_s"}, {t, g});
  write_csv(options.out_dir / "transfer.csv", header, {"omega", "G_numeric", "G_analytic", "G_square"},
            {w, numeric, analytic, square});
}

void cmd_psd_variance(RunConfig& config, const Options& options) {
  const double T = config.required_number("psd.T");
  const double tau_p = config.required_number("psd.tau_p");
  const double k_eff = config.number("psd.k_eff", kDefaultKeff);
  const FrequencyUnit unit = read_unit(config, "psd.units");
  const bool two_sided = read_two_sided(config, "psd.sided");
  noise::IntegrationOptions integ;
  integ.allow_partial_coverage = config.flag("psd.allow_partial", false);
  const bool has_phase = config.has("psd.phase_psd_file");
  const bool has_accel = config.has("psd.accel_psd_file");
  if (!has_phase && !has_accel) {
    throw ConfigError("[psd] needs phase_psd_file, accel_psd_file or both");
  }
  noise::Psd s_phi;
  noise::Psd s_a;
  // Vibration keys are read even without an acceleration PSD so they stay legal.
  const double averaging = config.number("psd.averaging_time", 0.0);
  double cycle = config.number("psd.cycle_time", 0.0);
  if (has_phase) s_phi = read_psd(config.file("psd.phase_psd_file"), unit, two_sided);
  if (has_accel) {
    s_a = read_psd(config.file("psd.accel_psd_file"), unit, two_sided);
    cycle = config.required_number("psd.cycle_time");
  }
  config.reject_unknown({"psd"});
  const noise::SensitivityProfile profile = noise::SensitivityProfile::from_pulse(T, tau_p);

  Summary summary;
  const noise::CoverageWindow win = noise::coverage_window(profile);
  summary.emplace_back("window_lo", num(win.lo));
  summary.emplace_back("window_hi", num(win.hi));
  if (has_phase) {
    const noise::PsdIntegral r = noise::phase_variance_from_psd(s_phi, profile, integ);
    summary.emplace_back("phase_variance", num(r.value));
    summary.emplace_back("phase_truncation_estimate", num(r.truncation_estimate));
    summary.emplace_back("phase_covered", r.covered ? "true" : "false");
  }
  if (has_accel) {
    noise::VibrationOptions vib;
    vib.integration = integ;
    vib.averaging_time = averaging;
    const noise::PsdIntegral printed = noise::allan_from_acceleration_psd(s_a, profile, k_eff, cycle, vib);
    vib.weighting = noise::VibrationWeighting::Consistent;
    const noise::PsdIntegral consistent = noise::allan_from_acceleration_psd(s_a, profile, k_eff, cycle, vib);
    summary.emplace_back("vibration_allan_printed", num(printed.value));
    summary.emplace_back("vibration_allan_printed_truncation", num(printed.truncation_estimate));
    summary.emplace_back("vibration_allan_consistent", num(consistent.value));
    summary.emplace_back("vibration_allan_consistent_truncation", num(consistent.truncation_estimate));
    summary.emplace_back("vibration_covered", printed.covered ? "true" : "false");
  }
  write_summary(options.out_dir / "psd_variance.txt", echo_header("psd-variance", config), summary);
}

void cmd_synth(RunConfig& config, const Options& options) {
  noise::Psd target;
  if (config.has("synth.psd_file")) {
    const auto path = config.file("synth.psd_file");
    target = read_psd(path, read_unit(config, "synth.units"), read_two_sided(config, "synth.sided"));
  } else {
    target = noise::Psd::flat(config.required_number("synth.flat_lo"), config.required_number("synth.flat_hi"),
                              config.required_number("synth.flat_level"));
  }
  const double duration = config.required_number("synth.duration");
  const double dt = config.required_number("synth.dt");
  const std::uint64_t seed = config.count("synth.seed", 0);
  config.reject_unknown({"synth"});

  const noise::TimeSeries s = noise::synthesize_noise(target, duration, dt, seed);
  std::vector<double> t(s.samples.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = s.time(i);
  const std::string header = echo_header("synth", config);
  write_csv(options.out_dir / "synth.csv", header, {"t", "y"}, {t, s.samples});
  write_summary(options.out_dir / "synth_summary.txt", header,
                {{"samples", std::to_string(s.samples.size())},
                 {"sample_variance", num(noise::sample_variance(s.samples))},
                 {"target_power", num(target.total_power())}});
}

}  // namespace gravsim::cli
