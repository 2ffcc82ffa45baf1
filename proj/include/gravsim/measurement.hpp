#pragma once

// Simulated chirp scans and the fringe fit that turns them into g.

#include <cstdint>
#include <random>
#include <vector>

#include "gravsim/core.hpp"
#include "gravsim/parallel.hpp"

namespace gravsim::measurement {

struct FringeScan {
  std::vector<double> betas;          // rad/s^2
  std::vector<double> probabilities;  // ideal P(beta)
  std::vector<double> measured;       // detected excited fraction
  std::uint64_t n_atoms = 0;          // 0 means noiseless detection
  std::uint64_t seed = 0;

  void validate() const;
};

struct GravityEstimate {
  double g_hat = 0.0;         // m/s^2
  double sigma_g = 0.0;       // m/s^2, 1 sigma
  double beta_null = 0.0;     // rad/s^2
  double fit_residual = 0.0;  // RMS of the fit residuals
  double offset = 0.0;        // fitted A
  double amplitude = 0.0;     // fitted B (>= 0)
  double sigma_beta = 0.0;    // rad/s^2
  int iterations = 0;
};

/// 1/2 [1 - cos((beta - k_eff g) T^2 + dphi_laser)].
double ideal_fringe(double beta, double k_eff, double g_true, double T, double dphi_laser);

/// Fringe period in beta.
double fringe_period(double T);

/// Per-shot generator seeded from (seed, index) so results do not depend on scheduling.
std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t index);

/// Binomial(n_atoms, p) / n_atoms.
double detect(double p_ideal, std::uint64_t n_atoms, std::mt19937_64& rng);

struct ScanConfig {
  double k_eff = kDefaultKeff;
  double g_true = kDefaultG;
  double T = 0.1;
  double dphi_laser = 0.0;
  double beta_center = 0.0;  // 0 means k_eff * g_true
  double span_periods = 2.0;
  std::size_t n_points = 50;
  std::uint64_t n_atoms = 0;  // 0: noiseless
  std::uint64_t seed = 0;

  double center() const { return beta_center != 0.0 ? beta_center : k_eff * g_true; }
  void validate() const;
};

/// Evenly spaced beta grid over span_periods fringes centred on center().
std::vector<double> beta_grid(const ScanConfig& config);

FringeScan simulate_scan(const ScanConfig& config, Execution exec = Execution::Parallel);

/// Same physics on an explicit beta grid; the grid fields of config are ignored.
FringeScan simulate_scan(std::vector<double> betas, const ScanConfig& config,
                         Execution exec = Execution::Parallel);

struct FitOptions {
  double dphi_laser = 0.0;  // known laser-phase offset, moved out of beta_null
  int max_iterations = 100;
  int seed_grid = 64;       // coarse beta_0 grid points per fringe
};

/// Fits A - B cos((beta - beta_0) T^2) and reports the null nearest the scan centre.
GravityEstimate estimate_g(const FringeScan& scan, double k_eff, double T,
                           const FitOptions& options = {});

/// Uses a short-T scan to choose the fringe of a long-T scan.
GravityEstimate estimate_g_two_t(const FringeScan& short_scan, double T_short,
                                 const FringeScan& long_scan, double T_long, double k_eff,
                                 const FitOptions& options = {});

/// Independent scans seeded from (master seed, index), fitted in parallel.
std::vector<GravityEstimate> estimate_ensemble(const ScanConfig& config, std::size_t n_seeds,
                                               Execution exec = Execution::Parallel,
                                               const FitOptions& options = {});

/// Derived seed for ensemble member `index`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace gravsim::measurement
