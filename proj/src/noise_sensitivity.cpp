#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "gravsim/noise.hpp"
#include "gravsim/quadrature.hpp"

namespace gravsim::noise {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// g(t) = c0 + amp * sin(w (t - shift)) on [a, b].
struct Piece {
  double a = 0.0;
  double b = 0.0;
  double c0 = 0.0;
  double amp = 0.0;
  double shift = 0.0;

  double value(double t, double w) const { return c0 + amp * std::sin(w * (t - shift)); }
  double derivative(double t, double w) const { return amp * w * std::cos(w * (t - shift)); }
  // integral of g from a to x.
  double integral_to(double x, double w) const {
    double s = c0 * (x - a);
    if (amp != 0.0) s -= amp / w * (std::cos(w * (x - shift)) - std::cos(w * (a - shift)));
    return s;
  }
};

std::array<Piece, 5> symmetric_pieces(const SensitivityProfile& p) {
  const double h = 0.5 * p.tau_p;
  const double end = p.duration();
  return {Piece{0.0, h, 0.0, -1.0, 0.0},
          Piece{h, p.T + h, -1.0, 0.0, 0.0},
          Piece{p.T + h, p.T + 3.0 * h, 0.0, 1.0, p.pi_center()},
          Piece{p.T + 3.0 * h, 2.0 * p.T + 3.0 * h, 1.0, 0.0, 0.0},
          Piece{2.0 * p.T + 3.0 * h, end, 0.0, -1.0, end}};
}

std::array<Piece, 3> printed_pieces(const SensitivityProfile& p) {
  return {Piece{0.0, 0.5 * p.T, 0.0, 1.0, 0.0}, Piece{0.5 * p.T, 1.5 * p.T, 1.0, 0.0, 0.0},
          Piece{1.5 * p.T, 2.0 * p.T, 0.0, 1.0, p.T}};
}

// integral_a^b e^{i k t} dt without cancellation at small k.
std::complex<double> phase_integral(double k, double a, double b) {
  const double half = 0.5 * (b - a);
  const double x = k * half;
  const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return (b - a) * sinc * std::exp(kI * (k * 0.5 * (a + b)));
}

// Calls fn(lo, hi) for every sub-interval of [t_lo, t_hi] between consecutive
// samples of `series` (times relative to t_start).
template <typename Fn>
void for_each_sample_interval(const TimeSeries& series, double t_start, double t_lo, double t_hi,
                              Fn&& fn) {
  const double abs_lo = t_start + t_lo;
  const double abs_hi = t_start + t_hi;
  const double last = series.time(series.samples.size() - 1);
  if (abs_lo < series.t0 - 1e-12 * series.dt || abs_hi > last + 1e-9 * series.dt) {
    throw DataError(fmt::format("window [{}, {}] s lies outside the series span [{}, {}] s",
                                abs_lo, abs_hi, series.t0, last));
  }
  const std::size_t last_interval = series.samples.size() - 2;
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor((abs_lo - series.t0) / series.dt)));
  i = std::min(i, last_interval);
  for (; i <= last_interval; ++i) {
    const double lo = std::max(abs_lo, series.time(i));
    const double hi = i == last_interval ? abs_hi : std::min(abs_hi, series.time(i + 1));
    if (hi > lo) fn(lo - t_start, hi - t_start, i);
    if (hi >= abs_hi) break;
  }
}

double linear_sample(const TimeSeries& s, std::size_t i, double t_abs) {
  const double frac = (t_abs - s.time(i)) / s.dt;
  return s.samples[i] + frac * (s.samples[i + 1] - s.samples[i]);
}

}  // namespace

SensitivityProfile SensitivityProfile::from_pulse(double T, double tau_p) {
  SensitivityProfile p{T, tau_p, tau_p > 0.0 ? kPi / tau_p : 0.0};
  p.validate();
  return p;
}

void SensitivityProfile::validate() const {
  if (!(tau_p > 0.0) || !(T > tau_p)) {
    throw InvalidParameterError(
        fmt::format("sensitivity profile needs T > tau_p > 0 (T={}, tau_p={})", T, tau_p));
  }
  if (std::abs(omega_r * tau_p - kPi) > 1e-9 * kPi) {
    throw InvalidParameterError(
        fmt::format("omega_r * tau_p = {} but the pi-pulse condition needs pi", omega_r * tau_p));
  }
}

double sensitivity_g(double t, const SensitivityProfile& profile, SensitivityForm form) {
  if (form == SensitivityForm::Printed) {
    for (const Piece& piece : printed_pieces(profile)) {
      if (t > piece.a && t < piece.b) return piece.value(t, profile.omega_r);
    }
    return 0.0;
  }
  if (t < 0.0 || t > profile.duration()) return 0.0;
  for (const Piece& piece : symmetric_pieces(profile)) {
    if (t <= piece.b) return piece.value(t, profile.omega_r);
  }
  return 0.0;
}

double sensitivity_g_derivative(double t, const SensitivityProfile& profile) {
  if (t < 0.0 || t > profile.duration()) return 0.0;
  for (const Piece& piece : symmetric_pieces(profile)) {
    if (t <= piece.b) return piece.derivative(t, profile.omega_r);
  }
  return 0.0;
}

double acceleration_kernel(double t, const SensitivityProfile& profile) {
  if (t <= 0.0) return 0.0;
  double acc = 0.0;
  for (const Piece& piece : symmetric_pieces(profile)) {
    if (t <= piece.b) return -(acc + piece.integral_to(t, profile.omega_r));
    acc += piece.integral_to(piece.b, profile.omega_r);
  }
  return -acc;
}

double acceleration_response(const std::function<double(double)>& accel,
                             const SensitivityProfile& profile, double k_eff) {
  profile.validate();
  constexpr std::size_t kOrder = 10;
  double total = 0.0;
  for (const Piece& piece : symmetric_pieces(profile)) {
    const std::size_t panels = piece.amp != 0.0 ? 16 : 256;
    total += gauss_legendre_composite(
        [&](double t) { return acceleration_kernel(t, profile) * accel(t); }, piece.a, piece.b,
        panels, kOrder);
  }
  return k_eff * total;
}

double acceleration_response(const TimeSeries& accel, double t_start,
                             const SensitivityProfile& profile, double k_eff) {
  profile.validate();
  accel.validate();
  constexpr std::size_t kOrder = 4;
  double total = 0.0;
  for (const Piece& piece : symmetric_pieces(profile)) {
    for_each_sample_interval(accel, t_start, piece.a, piece.b,
                             [&](double lo, double hi, std::size_t i) {
                               total += gauss_legendre_panel(
                                   [&](double t) {
                                     return acceleration_kernel(t, profile) *
                                            linear_sample(accel, i, t + t_start);
                                   },
                                   lo, hi, kOrder);
                             });
  }
  return k_eff * total;
}

double phase_response(const TimeSeries& phase, double t_start, const SensitivityProfile& profile) {
  profile.validate();
  phase.validate();
  constexpr std::size_t kOrder = 4;
  double total = 0.0;
  // g_s is flat between pulses, so only the pulses contribute to -integral g_s' phi.
  for (const Piece& piece : symmetric_pieces(profile)) {
    if (piece.amp == 0.0) continue;
    for_each_sample_interval(phase, t_start, piece.a, piece.b,
                             [&](double lo, double hi, std::size_t i) {
                               total += gauss_legendre_panel(
                                   [&](double t) {
                                     return piece.derivative(t, profile.omega_r) *
                                            linear_sample(phase, i, t + t_start);
                                   },
                                   lo, hi, kOrder);
                             });
  }
  return -total;
}

std::complex<double> transfer_function_analytic(double omega, const SensitivityProfile& profile) {
  profile.validate();
  const double w = profile.omega_r;
  std::complex<double> g{0.0, 0.0};
  for (const Piece& piece : symmetric_pieces(profile)) {
    if (piece.c0 != 0.0) g += piece.c0 * phase_integral(-omega, piece.a, piece.b);
    if (piece.amp != 0.0) {
      g += piece.amp / (2.0 * kI) *
           (std::exp(-kI * (w * piece.shift)) * phase_integral(w - omega, piece.a, piece.b) -
            std::exp(kI * (w * piece.shift)) * phase_integral(-w - omega, piece.a, piece.b));
    }
  }
  return g;
}

double transfer_function(double omega, const SensitivityProfile& profile, int refinement) {
  profile.validate();
  if (!(omega > 0.0)) {
    throw InvalidParameterError(fmt::format("transfer function needs w > 0, got {}", omega));
  }
  constexpr std::size_t kOrder = 12;
  std::complex<double> g{0.0, 0.0};
  for (const Piece& piece : symmetric_pieces(profile)) {
    // Dark pieces only oscillate at w.
    const double fastest = piece.amp != 0.0 ? omega + profile.omega_r : omega;
    const double cycles = (piece.b - piece.a) * fastest / kTwoPi;
    const auto panels = static_cast<std::size_t>(std::max(1, refinement)) *
                        static_cast<std::size_t>(std::max(4.0, std::ceil(2.0 * cycles)));
    const double re = gauss_legendre_composite(
        [&](double t) { return piece.value(t, profile.omega_r) * std::cos(omega * t); }, piece.a,
        piece.b, panels, kOrder);
    const double im = gauss_legendre_composite(
        [&](double t) { return -piece.value(t, profile.omega_r) * std::sin(omega * t); }, piece.a,
        piece.b, panels, kOrder);
    g += std::complex<double>(re, im);
  }
  return std::abs(g);
}

double transfer_function_square(double omega, double T) {
  const double s = std::sin(0.5 * omega * T);
  return 4.0 / omega * s * s;
}

CoverageWindow coverage_window(const SensitivityProfile& profile) {
  profile.validate();
  return {kTwoPi * 0.01 / profile.T, 100.0 * profile.omega_r};
}

}  // namespace gravsim::noise
