// Acceptance run: one PASS/FAIL line per criterion. INFO lines carry the
// companion numbers that explain a result but are not criteria themselves.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "gravsim/measurement.hpp"
#include "gravsim/noise.hpp"
#include "gravsim/raman.hpp"
#include "gravsim/trajectory.hpp"
#include "gravsim/twolevel.hpp"

using namespace gravsim;
using gravsim::testing::Gen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void info(const std::string& text) { fmt::print("INFO {}\n", text); }

void criterion(const std::string& id, const std::string& name, double limit_s,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, fmt::format("threw: {}", e.what())};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_s;
  const bool pass = out.pass && in_time;
  if (!pass) ++g_failures;
  fmt::print("{} {} {}: {} [{:.2f} s of {:.0f} s{}]\n", pass ? "PASS" : "FAIL", id, name, out.detail,
             elapsed, limit_s, in_time ? "" : ", too slow");
  std::fflush(stdout);
}

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

// Projectors written out entry by entry from their printed form.
Matrix2c printed_projector_plus(double theta, double phi) {
  Matrix2c m;
  m(0, 0) = std::pow(std::cos(theta / 2), 2);
  m(0, 1) = std::sin(theta) / 2 * cplx(std::cos(phi), -std::sin(phi));
  m(1, 0) = std::sin(theta) / 2 * cplx(std::cos(phi), std::sin(phi));
  m(1, 1) = std::pow(std::sin(theta / 2), 2);
  return m;
}

Matrix2c printed_projector_minus(double theta, double phi) {
  Matrix2c m;
  m(0, 0) = std::pow(std::sin(theta / 2), 2);
  m(0, 1) = -std::sin(theta) / 2 * cplx(std::cos(phi), -std::sin(phi));
  m(1, 0) = -std::sin(theta) / 2 * cplx(std::cos(phi), std::sin(phi));
  m(1, 1) = std::pow(std::cos(theta / 2), 2);
  return m;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  return noise::loglog_slope(x, y);
}

double scatter(const std::vector<measurement::GravityEstimate>& ens) {
  std::vector<double> g;
  for (const auto& e : ens) g.push_back(e.g_hat);
  return std::sqrt(noise::sample_variance(g));
}

double mean_sigma(const std::vector<measurement::GravityEstimate>& ens) {
  double s = 0.0;
  for (const auto& e : ens) s += e.sigma_g;
  return s / static_cast<double>(ens.size());
}

noise::TimeSeries read_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::vector<double> t;
  std::vector<double> y;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::stringstream ls(line);
    std::string a;
    std::string b;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    t.push_back(std::stod(a));
    y.push_back(std::stod(b));
  }
  noise::TimeSeries s;
  s.samples = y;
  s.t0 = t.front();
  s.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  return s;
}

constexpr double kRabi = kTwoPi * 50e3;

}  // namespace

int main() {
  criterion("1", "pi-pulse inversion", 1.0, [] {
    Gen g(1);
    double worst_closed = 0.0;
    double worst_oracle = 0.0;
    for (int i = 0; i < 100; ++i) {
      PulseParams p;
      p.rabi_mod = i == 0 ? kRabi : g.log_uniform(1e3, 1e7);
      p.rabi_arg = i == 0 ? 0.0 : g.phase();
      p.laser_phase = i == 0 ? 0.0 : g.phase();
      p.start_time = i == 0 ? 0.0 : g.uniform(0.0, 1e-3);
      p.duration = kPi / p.rabi_mod;
      const double closed = std::norm(twolevel::evolve_pulse(TwoLevelState::ground(), p).c_b);
      const double dt = kTwoPi / (200.0 * p.rabi_mod);
      const double oracle = std::norm(twolevel::ode_oracle(TwoLevelState::ground(), p, dt).c_b);
      worst_closed = std::max(worst_closed, std::abs(closed - 1.0));
      worst_oracle = std::max(worst_oracle, std::abs(closed - oracle));
    }
    return Outcome{worst_closed <= 1e-12 && worst_oracle <= 1e-6,
                   fmt::format("max |P - 1| = {:.2e} (tol 1e-12), max |closed - RK4| = {:.2e} (tol 1e-6)",
                               worst_closed, worst_oracle)};
  });

  criterion("2a", "three-pulse fringe law", 10.0, [] {
    const double tau_p = kPi / kRabi;
    const double delta = 1e-3 * kRabi;
    Gen g(2);
    double worst = 0.0;
    double worst_uniform = 0.0;
    double worst_plain = 0.0;
    for (int i = 0; i < 1000; ++i) {
      twolevel::SequenceParams seq;
      seq.phases = {g.phase(), g.phase(), g.phase()};
      seq.T = 1e-3;
      seq.tau_p = tau_p;
      seq.rabi = kRabi;
      seq.delta = delta;
      const double dphi = trajectory::laser_phase_combination(seq.phases);
      const double law = twolevel::mach_zehnder_probability(delta, tau_p, dphi);
      const double p = twolevel::run_sequence(seq);
      worst = std::max(worst, std::abs(p - law));
      worst_plain = std::max(worst_plain, std::abs(p - 0.5 * (1.0 - std::cos(dphi))));
      seq.timeline = twolevel::PulseTimeline::UniformStarts;
      worst_uniform = std::max(worst_uniform, std::abs(twolevel::run_sequence(seq) - law));
    }
    info(fmt::format("2a equal dark intervals vs 1/2[1 - cos dphi]: max error {:.2e}", worst_plain));
    info(fmt::format("2a pulse starts spaced by T vs the printed law: max error {:.2e}", worst_uniform));
    return Outcome{worst <= 1e-4,
                   fmt::format("max |P - law| = {:.2e} over 1000 phase draws (tol 1e-4)", worst)};
  });

  criterion("2b", "two- and three-level laws identical", 10.0, [] {
    Gen g(3);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      const double delta = g.uniform(-1e6, 1e6);
      const double tau = g.uniform(0.0, 1e-4);
      const double dphi = g.uniform(-10.0, 10.0);
      if (raman::raman_sequence_probability(delta, tau, dphi) !=
          twolevel::mach_zehnder_probability(delta, tau, dphi)) {
        ++mismatches;
      }
    }
    return Outcome{mismatches == 0, fmt::format("{} mismatches in 10000 inputs", mismatches)};
  });

  criterion("3", "action closed form vs quadrature", 1.0, [] {
    Gen g(4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double dt = g.log_uniform(1e-3, 1.0);
      const double t1 = g.uniform(0.0, 1.0);
      const double v = g.uniform(-1.0, 1.0);
      const double z1 = g.uniform(-0.5, 0.5);
      const double grav = g.uniform(0.0, 10.0);
      const double z2 = z1 + v * dt - 0.5 * grav * dt * dt;
      const double m = kDefaultAtomMass;
      const double closed = trajectory::classical_action(z1, t1, z2, t1 + dt, m, grav);
      const double quad = trajectory::action_quadrature_oracle(z1, t1, z2, t1 + dt, m, grav, 10000);
      worst = std::max(worst, std::abs(closed - quad) / std::max(std::abs(closed), std::abs(quad)));
    }
    return Outcome{worst <= 1e-9, fmt::format("max relative difference {:.2e} (tol 1e-9)", worst)};
  });

  criterion("4", "interferometer geometry", 1.0, [] {
    double worst_rel = 0.0;
    double worst_zero = 0.0;
    double worst_phase = 0.0;
    for (double grav : {0.0, 1.62, 9.81}) {
      for (double T : {0.01, 0.1}) {
        const auto v = trajectory::build_vertices(0.0, 0.0, T, kDefaultKeff, grav, kDefaultAtomMass);
        const double lhs = v.z_c + v.z_d - v.z_a - v.z_b;
        if (grav == 0.0) {
          worst_zero = std::max(worst_zero, std::abs(lhs));
        } else {
          worst_rel = std::max(worst_rel, std::abs(lhs - grav * T * T) / (grav * T * T));
        }
        worst_phase = std::max(worst_phase, std::abs(trajectory::path_phase(v, T, kDefaultAtomMass, grav)));
      }
    }
    return Outcome{worst_rel <= 1e-12 && worst_zero == 0.0 && worst_phase <= 1e-9,
                   fmt::format("gT^2 max rel error {:.2e} (tol 1e-12), g = 0 residual {:.1e} m, "
                               "max |path phase| {:.2e} rad (tol 1e-9)",
                               worst_rel, worst_zero, worst_phase)};
  });

  criterion("5", "g recovery and shot-noise scaling", 120.0, [] {
    measurement::ScanConfig cfg;
    cfg.g_true = 9.81;
    cfg.k_eff = 1.61e7;
    cfg.T = 0.1;
    cfg.n_points = 50;
    const measurement::FringeScan clean = measurement::simulate_scan(cfg);
    const double g_hat = measurement::estimate_g(clean, cfg.k_eff, cfg.T).g_hat;
    const double rel = std::abs(g_hat - cfg.g_true) / cfg.g_true;

    cfg.seed = 5;
    std::vector<double> ns{1e3, 1e4, 1e5};
    std::vector<double> reported;
    std::vector<double> spread;
    for (double n : ns) {
      cfg.n_atoms = static_cast<std::uint64_t>(n);
      const auto ens = measurement::estimate_ensemble(cfg, 200);
      reported.push_back(mean_sigma(ens));
      spread.push_back(scatter(ens));
    }
    cfg.n_atoms = 1000000;
    const auto million = measurement::estimate_ensemble(cfg, 200);
    info(fmt::format("5 n_atoms = 1e6: mean sigma_g {:.3e}, scatter {:.3e} m/s^2", mean_sigma(million),
                     scatter(million)));
    const double s_rep = slope(ns, reported);
    const double s_emp = slope(ns, spread);
    return Outcome{rel <= 1e-9 && std::abs(s_rep + 0.5) <= 0.05 && std::abs(s_emp + 0.5) <= 0.05,
                   fmt::format("noiseless rel error {:.2e} (tol 1e-9), sigma_g slope {:.4f}, "
                               "scatter slope {:.4f} (tol -0.5 +- 0.05)",
                               rel, s_rep, s_emp)};
  });

  criterion("6", "Allan estimator", 10.0, [] {
    const noise::TimeSeries fixture =
        read_fixture(std::filesystem::path(GRAVSIM_DATA_DIR) / "white_noise.csv");
    std::vector<double> taus;
    for (int k = 0; k <= 20; ++k) taus.push_back(fixture.dt * std::round(std::pow(10.0, k / 10.0)));
    const noise::AllanResult r = noise::allan_deviation(fixture, taus);
    const double s = slope(r.tau_avgs, r.adevs);

    noise::TimeSeries flat;
    flat.dt = 0.01;
    flat.samples.assign(1000, 3.7);
    double worst = 0.0;
    for (double a : noise::allan_deviation(flat, noise::log_tau_grid(flat)).adevs) {
      worst = std::max(worst, std::abs(a));
    }
    return Outcome{std::abs(s + 0.5) <= 0.05 && worst == 0.0,
                   fmt::format("fixture slope {:.4f} over tau in [{:.0e}, {:.0e}] s (tol -0.5 +- 0.05), "
                               "constant input max adev {}",
                               s, r.tau_avgs.front(), r.tau_avgs.back(), worst)};
  });

  criterion("7a", "DC acceleration through the sensitivity function", 300.0, [] {
    const double T = 0.1;
    const auto profile = noise::SensitivityProfile::from_pulse(T, 1e-10);
    const double a = 0.37;
    const double phi = noise::acceleration_response([&](double) { return a; }, profile, kDefaultKeff);
    const double rel = std::abs(phi - kDefaultKeff * a * T * T) / (kDefaultKeff * a * T * T);
    return Outcome{rel <= 1e-6, fmt::format("relative error vs k_eff a T^2: {:.2e} (tol 1e-6)", rel)};
  });

  criterion("7b", "white phase noise: PSD integral vs Monte Carlo", 300.0, [] {
    const auto profile = noise::SensitivityProfile::from_pulse(1e-3, 20e-6);
    const noise::CoverageWindow win = noise::coverage_window(profile);
    const double level = 1e-10;
    const noise::Psd psd = noise::Psd::flat(win.lo, 4.0 * profile.omega_r, level, win.hi);
    const double predicted = noise::phase_variance_from_psd(psd, profile).value;

    const double cycle = 4e-3;
    const std::size_t shots = 500;
    const double duration = cycle * static_cast<double>(shots) + 4e-3;
    const std::uint64_t seed = 7001;  // fixed before the first run
    const noise::TimeSeries phase = noise::synthesize_noise(psd, duration, 2.5e-7, seed);
    const double mc = noise::sample_variance(noise::phase_noise_shots(phase, profile, cycle, shots));
    const double ratio = mc / predicted;
    return Outcome{std::abs(ratio - 1.0) <= 0.10,
                   fmt::format("PSD {:.4e} rad^2, Monte Carlo {:.4e} rad^2 over {} shots, ratio {:.4f} "
                               "(tol 10%)",
                               predicted, mc, shots, ratio)};
  });

  criterion("7c", "vibration Allan variance: PSD formula vs Monte Carlo", 300.0, [] {
    const double T = 1e-3;
    const auto profile = noise::SensitivityProfile::from_pulse(T, 20e-6);
    const noise::CoverageWindow win = noise::coverage_window(profile);
    const double level = 1e-8;
    const noise::Psd s_a = noise::Psd::flat(win.lo, 1e5, level, win.hi);
    const double cycle = 4e-3;

    noise::VibrationOptions printed_opt;
    const double printed = noise::allan_from_acceleration_psd(s_a, profile, kDefaultKeff, cycle, printed_opt).value;
    noise::VibrationOptions consistent_opt;
    consistent_opt.weighting = noise::VibrationWeighting::Consistent;
    const double consistent =
        noise::allan_from_acceleration_psd(s_a, profile, kDefaultKeff, cycle, consistent_opt).value;

    const std::size_t shots = 2000;
    const double duration = cycle * static_cast<double>(shots) + 4e-3;
    const std::uint64_t seed = 7002;  // fixed before the first run
    const noise::TimeSeries accel = noise::synthesize_noise(s_a, duration, 2.5e-6, seed);
    const std::vector<double> phases = noise::vibration_shots(accel, profile, kDefaultKeff, cycle, shots);
    const double mc = noise::allan_variance(phases, 1);

    info(fmt::format("7c Consistent weighting {:.4e} rad^2, Monte Carlo / Consistent = {:.4f}", consistent,
                     mc / consistent));
    const double ratio = mc / printed;
    return Outcome{std::abs(ratio - 1.0) <= 0.15,
                   fmt::format("formula {:.4e}, Monte Carlo Allan variance at tau = T_c {:.4e} over {} "
                               "shots, ratio {:.4e} (tol 15%)",
                               printed, mc, shots, ratio)};
  });

  criterion("8", "adiabatic elimination", 30.0, [] {
    Gen g(8);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      raman::LaserPair l;
      l.k1 = 8.05e6;
      l.k2 = -8.05e6;
      l.rabi_gi = std::polar(g.uniform(0.5e6, 1.0e6), g.phase());
      l.rabi_ei = std::polar(g.uniform(0.5e6, 1.0e6), g.phase());
      l.phi1 = g.phase();
      l.phi2 = g.phase();
      const double big_delta = 100.0 * std::max(std::abs(l.rabi_gi), std::abs(l.rabi_ei)) * g.sign();
      // Drive on the light-shifted resonance.
      const double delta = raman::effective_params(l, big_delta).delta_ac.real();
      const raman::RamanDetunings det{big_delta + delta / 2, big_delta - delta / 2, delta};
      const raman::EffectiveParams e = raman::effective_params(l, det);
      const double tau = 0.5 * kPi / std::abs(e.omega_eff);
      const ThreeLevelState full =
          raman::three_level_ode_oracle(ThreeLevelState{}, l, det, 0.0, tau, raman::three_level_max_step(l, det));
      const TwoLevelState eff = raman::raman_pulse(TwoLevelState::ground(), e, delta, 0.0, tau);
      worst = std::max({worst, std::abs(std::norm(full.c_e) - std::norm(eff.c_b)),
                        std::abs(std::norm(full.c_g) - std::norm(eff.c_a))});
    }
    return Outcome{worst <= 1e-3,
                   fmt::format("max population difference {:.2e} over 10 coupling draws (tol 1e-3)", worst)};
  });

  criterion("9", "eigensystem projectors", 1.0, [] {
    Gen g(9);
    double worst = 0.0;
    double worst_complete = 0.0;
    for (int i = 0; i < 1000; ++i) {
      twolevel::RotatingFrameHamiltonian h{g.uniform(-1e6, 1e6), g.log_uniform(1e2, 1e6), g.phase(), g.phase()};
      const double theta = twolevel::mixing_angle(h.delta, h.rabi_mod).theta;
      const double phi = h.coupling_phase();
      const twolevel::Eigensystem es = twolevel::eigensystem(h);
      worst = std::max({worst, max_abs(es.projector_plus() - printed_projector_plus(theta, phi)),
                        max_abs(es.projector_minus() - printed_projector_minus(theta, phi)),
                        max_abs(twolevel::projector_plus_closed_form(theta, phi) -
                                printed_projector_plus(theta, phi)),
                        max_abs(twolevel::projector_minus_closed_form(theta, phi) -
                                printed_projector_minus(theta, phi))});
      worst_complete = std::max(
          worst_complete, max_abs(es.projector_plus() + es.projector_minus() - Matrix2c::Identity()));
    }
    return Outcome{worst <= 1e-12 && worst_complete <= 1e-12,
                   fmt::format("max entry error {:.2e}, completeness {:.2e} over 1000 draws (tol 1e-12)",
                               worst, worst_complete)};
  });

  fmt::print("{} criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
