#include <fftw3.h>
#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <random>

#include "gravsim/noise.hpp"

namespace gravsim::noise {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffers {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  explicit FftwBuffers(std::size_t n) {
    real = fftw_alloc_real(n);
    spectrum = fftw_alloc_complex(n / 2 + 1);
    if (real == nullptr || spectrum == nullptr) {
      fftw_free(real);
      fftw_free(spectrum);
      throw std::bad_alloc();
    }
  }
  ~FftwBuffers() {
    fftw_free(real);
    fftw_free(spectrum);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

template <typename Planner>
void run_plan(Planner&& make_plan) {
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = make_plan();
  }
  if (plan == nullptr) throw Error(ErrorKind::Data, "FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

template <typename Fn>
std::vector<double> shots(std::size_t n_shots, Execution exec, Fn&& fn) {
  std::vector<double> out(n_shots);
  for_each_index(n_shots, exec, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace

TimeSeries synthesize_noise(const Psd& target, double duration, double dt, std::uint64_t seed) {
  target.validate();
  if (!(dt > 0.0) || !(duration > dt)) {
    throw InvalidParameterError(
        fmt::format("synthesis needs 0 < dt < duration (dt={}, duration={})", dt, duration));
  }
  auto n = static_cast<std::size_t>(std::llround(duration / dt));
  if (n % 2 != 0) ++n;
  TimeSeries out;
  out.dt = dt;
  out.samples.assign(n, 0.0);
  const double w_max = target.max_nonzero_frequency();
  if (w_max == 0.0) return out;

  const double nyquist = kPi / dt;
  if (w_max > nyquist * (1.0 + 1e-12)) {
    throw ResolutionError(fmt::format(
        "dt = {} s resolves up to {} rad/s but the target PSD is nonzero up to {} rad/s", dt,
        nyquist, w_max));
  }
  const double w_min = target.min_nonzero_frequency();
  const double span = dt * static_cast<double>(n);
  if (span * w_min < 100.0) {
    throw ResolutionError(fmt::format(
        "duration {} s is too short for the lowest PSD frequency {} rad/s (need duration * w >= "
        "100)",
        span, w_min));
  }

  const double dw = kTwoPi / span;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  FftwBuffers buf(n);
  buf.spectrum[0][0] = 0.0;
  buf.spectrum[0][1] = 0.0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double sd = std::sqrt(target.value_at(static_cast<double>(k) * dw) * dw);
    const double a = sd * normal(rng);
    const double b = sd * normal(rng);
    if (k == n / 2) {
      // Real Nyquist bin: a single cosine carries the whole band power.
      buf.spectrum[k][0] = a;
      buf.spectrum[k][1] = 0.0;
    } else {
      // x_n = a cos(w t) + b sin(w t) via X_k e^{i w t} + conj.
      buf.spectrum[k][0] = 0.5 * a;
      buf.spectrum[k][1] = -0.5 * b;
    }
  }
  run_plan([&] {
    return fftw_plan_dft_c2r_1d(static_cast<int>(n), buf.spectrum, buf.real, FFTW_ESTIMATE);
  });
  std::copy(buf.real, buf.real + n, out.samples.begin());
  return out;
}

Psd periodogram(const TimeSeries& series) {
  series.validate();
  const std::size_t n = series.samples.size();
  FftwBuffers buf(n);
  std::copy(series.samples.begin(), series.samples.end(), buf.real);
  run_plan([&] {
    return fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.real, buf.spectrum, FFTW_ESTIMATE);
  });
  const double dw = kTwoPi / (series.dt * static_cast<double>(n));
  const double scale = 2.0 * series.dt / (kTwoPi * static_cast<double>(n));
  Psd psd;
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    const std::complex<double> x(buf.spectrum[k][0], buf.spectrum[k][1]);
    psd.freqs.push_back(static_cast<double>(k) * dw);
    psd.values.push_back(scale * std::norm(x));
  }
  return psd;
}

std::vector<double> phase_noise_shots(const TimeSeries& phase, const SensitivityProfile& profile,
                                      double cycle_time, std::size_t n_shots, Execution exec) {
  profile.validate();
  phase.validate();
  if (!(cycle_time >= profile.duration())) {
    throw InvalidParameterError(fmt::format("cycle time {} s is shorter than the sequence ({} s)",
                                            cycle_time, profile.duration()));
  }
  return shots(n_shots, exec, [&](std::size_t i) {
    return phase_response(phase, phase.t0 + static_cast<double>(i) * cycle_time, profile);
  });
}

std::vector<double> vibration_shots(const TimeSeries& accel, const SensitivityProfile& profile,
                                    double k_eff, double cycle_time, std::size_t n_shots,
                                    Execution exec) {
  profile.validate();
  accel.validate();
  if (!(cycle_time >= profile.duration())) {
    throw InvalidParameterError(fmt::format("cycle time {} s is shorter than the sequence ({} s)",
                                            cycle_time, profile.duration()));
  }
  return shots(n_shots, exec, [&](std::size_t i) {
    return acceleration_response(accel, accel.t0 + static_cast<double>(i) * cycle_time, profile,
                                 k_eff);
  });
}

}  // namespace gravsim::noise
