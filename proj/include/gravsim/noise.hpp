#pragma once

// Sensitivity function, transfer function, PSD variance integrals, Allan
// statistics and Gaussian noise synthesis.
//
// PSDs are one-sided in angular frequency: the variance of the signal is
// the integral of S(w) dw over [0, inf).

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gravsim/core.hpp"
#include "gravsim/parallel.hpp"

namespace gravsim::noise {

struct TimeSeries {
  std::vector<double> samples;
  double dt = 0.0;  // s
  double t0 = 0.0;  // s

  void validate() const;
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double duration() const { return dt * static_cast<double>(samples.size()); }
  /// Linear interpolation between samples; throws DataError outside the sampled span.
  double value_at(double t) const;
};

struct Psd {
  std::vector<double> freqs;   // rad/s, strictly ascending, >= 0
  std::vector<double> values;  // unit^2 s / rad, >= 0

  void validate() const;
  /// Piecewise-linear in w over the tabulated span, zero outside.
  double value_at(double omega) const;
  /// Integral of the piecewise-linear PSD, i.e. the signal variance.
  double total_power() const;
  /// Highest tabulated frequency carrying nonzero density (0 for an all-zero PSD).
  double max_nonzero_frequency() const;
  /// Lowest positive frequency carrying nonzero density (0 for an all-zero PSD).
  double min_nonzero_frequency() const;

  /// S0 on [lo, hi]; zero elsewhere. Extra zero-valued points out to `zero_until` if given.
  static Psd flat(double lo, double hi, double level, double zero_until = 0.0);
};

/// Which g_s to evaluate.
enum class SensitivityForm {
  /// Odd about the pi-pulse centre: -sin, -1, sin, +1, sin back to 0.
  Symmetric,
  /// The printed piecewise values sin(W t), 1, sin(W (t - T)) on (0, T/2), (T/2, 3T/2), (3T/2, 2T).
  Printed,
};

struct SensitivityProfile {
  double T = 0.0;        // dark interval (s)
  double tau_p = 0.0;    // pi-pulse duration (s)
  double omega_r = 0.0;  // Rabi frequency, omega_r * tau_p = pi

  static SensitivityProfile from_pulse(double T, double tau_p);
  void validate() const;

  double pi_center() const { return T + tau_p; }
  double duration() const { return 2.0 * T + 2.0 * tau_p; }
};

/// g_s(t), zero outside the sequence.
double sensitivity_g(double t, const SensitivityProfile& profile,
                     SensitivityForm form = SensitivityForm::Symmetric);

/// dg_s/dt (Symmetric form; zero in the dark intervals).
double sensitivity_g_derivative(double t, const SensitivityProfile& profile);

/// f(t) = -integral_0^t g_s, the acceleration response kernel:
/// dPhi = k_eff integral f(t) da(t) dt. Equals (1/k_eff)-scaled double
/// integral of g_a, with f(0) = f(end) = 0.
double acceleration_kernel(double t, const SensitivityProfile& profile);

/// k_eff * integral f(t) a(t) dt for an acceleration given as a function of time
/// measured from the first pulse.
double acceleration_response(const std::function<double(double)>& accel,
                             const SensitivityProfile& profile, double k_eff);

/// Same response for a sampled acceleration; the sequence starts at t_start.
double acceleration_response(const TimeSeries& accel, double t_start,
                             const SensitivityProfile& profile, double k_eff);

/// dPhi = integral g_s dphi/dt dt = -integral g_s' phi dt for a sampled laser-phase
/// perturbation; the sequence starts at t_start.
double phase_response(const TimeSeries& phase, double t_start, const SensitivityProfile& profile);

/// G(w) = integral g_s(t) e^{-i w t} dt, closed form over the five pieces.
std::complex<double> transfer_function_analytic(double omega, const SensitivityProfile& profile);

/// |G(w)| by Gauss-Legendre quadrature of g_s; refinement scales the panel count.
double transfer_function(double omega, const SensitivityProfile& profile, int refinement = 1);

/// (4/w) sin^2(w T / 2), the tau_p -> 0 square profile.
double transfer_function_square(double omega, double T);

/// Frequency window a PSD must span: [2 pi 0.01 / T, 100 omega_r].
struct CoverageWindow {
  double lo = 0.0;
  double hi = 0.0;
};
CoverageWindow coverage_window(const SensitivityProfile& profile);

struct IntegrationOptions {
  bool allow_partial_coverage = false;
  int order = 8;                       // Gauss-Legendre points per panel
  double oscillation_fraction = 0.25;  // panel width as a fraction of 2 pi / duration
  double relative_fraction = 0.25;     // ... and at most this fraction of w
  Execution exec = Execution::Parallel;
};

struct PsdIntegral {
  double value = 0.0;
  double truncation_estimate = 0.0;  // extrapolated weight outside the tabulated span
  bool covered = true;
  CoverageWindow window;
  std::size_t panels = 0;
};

/// integral of weight(w) S(w) dw over the tabulated span of S. The weight is the
/// squared transform of a function supported on an interval of support_duration.
PsdIntegral integrate_weighted_psd(const Psd& psd, const std::function<double(double)>& weight,
                                   const CoverageWindow& window, double support_duration,
                                   const IntegrationOptions& options = {});

/// sigma_Phi^2 = integral [w |G(w)|]^2 S_phi(w) dw.
PsdIntegral phase_variance_from_psd(const Psd& s_phi, const SensitivityProfile& profile,
                                    const IntegrationOptions& options = {});

enum class VibrationWeighting {
  /// (k_eff^2 / tau_m) integral |G/w^2|^2 S_a dw, as printed.
  Printed,
  /// k_eff^2 (T_c / tau) integral |G/w|^2 S_a dw: phase variance per shot scaled to tau.
  Consistent,
};

struct VibrationOptions {
  VibrationWeighting weighting = VibrationWeighting::Printed;
  double averaging_time = 0.0;  // tau for the Consistent form; 0 means one cycle
  IntegrationOptions integration;
};

/// Allan variance of the interferometer phase (rad^2) from an acceleration PSD.
PsdIntegral allan_from_acceleration_psd(const Psd& s_a, const SensitivityProfile& profile,
                                        double k_eff, double cycle_time,
                                        const VibrationOptions& options = {});

/// Zero-mean Gaussian series whose one-sided PSD is `target`; deterministic per seed.
TimeSeries synthesize_noise(const Psd& target, double duration, double dt, std::uint64_t seed);

/// Raw periodogram on the FFT grid (one-sided, angular), DC and Nyquist bins dropped.
Psd periodogram(const TimeSeries& series);

struct AllanOptions {
  bool overlapping = false;
  Execution exec = Execution::Parallel;
};

struct AllanResult {
  std::vector<double> tau_avgs;        // snapped to multiples of dt
  std::vector<double> adevs;
  std::vector<std::size_t> n_blocks;
  std::vector<double> requested;       // tau requested for each reported point
  std::vector<double> skipped;         // requested tau values with fewer than 2 blocks
};

/// Allan variance with blocks of m samples; throws InsufficientDataError below 2 blocks.
double allan_variance(std::span<const double> samples, std::size_t m, bool overlapping = false);

/// Allan deviation over a tau grid; points with fewer than 2 blocks are skipped
/// and listed in `skipped`. Throws InsufficientDataError when nothing remains.
AllanResult allan_deviation(const TimeSeries& series, std::span<const double> tau_avgs,
                            const AllanOptions& options = {});

/// Log-spaced block sizes from 1 to n/2 samples, as averaging times.
std::vector<double> log_tau_grid(const TimeSeries& series, int points_per_decade = 10);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Per-shot phase from a sampled laser-phase perturbation, shots every cycle_time.
std::vector<double> phase_noise_shots(const TimeSeries& phase, const SensitivityProfile& profile,
                                      double cycle_time, std::size_t n_shots,
                                      Execution exec = Execution::Parallel);

/// Per-shot phase from a sampled acceleration, shots every cycle_time.
std::vector<double> vibration_shots(const TimeSeries& accel, const SensitivityProfile& profile,
                                    double k_eff, double cycle_time, std::size_t n_shots,
                                    Execution exec = Execution::Parallel);

/// Unbiased sample variance with pairwise summation.
double sample_variance(std::span<const double> values);

}  // namespace gravsim::noise
