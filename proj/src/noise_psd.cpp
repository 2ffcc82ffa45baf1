#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gravsim/noise.hpp"
#include "gravsim/quadrature.hpp"

namespace gravsim::noise {

void TimeSeries::validate() const {
  if (!(dt > 0.0)) throw DataError(fmt::format("time series needs dt > 0, got {}", dt));
  if (samples.size() < 2) {
    throw InsufficientDataError(
        fmt::format("time series needs at least 2 samples, got {}", samples.size()));
  }
}

double TimeSeries::value_at(double t) const {
  validate();
  const double x = (t - t0) / dt;
  const double last = static_cast<double>(samples.size() - 1);
  if (x < -1e-9 || x > last + 1e-9) {
    throw DataError(fmt::format("t = {} s is outside the series span", t));
  }
  const double clamped = std::clamp(x, 0.0, last);
  const auto i = std::min(static_cast<std::size_t>(clamped), samples.size() - 2);
  const double frac = clamped - static_cast<double>(i);
  return samples[i] + frac * (samples[i + 1] - samples[i]);
}

void Psd::validate() const {
  if (freqs.size() != values.size()) {
    throw DataError(fmt::format("PSD has {} frequencies but {} values", freqs.size(),
                                values.size()));
  }
  if (freqs.size() < 2) throw InsufficientDataError("PSD needs at least 2 points");
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (!(freqs[i] >= 0.0) || !std::isfinite(freqs[i])) {
      throw DataError(fmt::format("PSD frequency {} at row {} is not a finite value >= 0",
                                  freqs[i], i));
    }
    if (i > 0 && !(freqs[i] > freqs[i - 1])) {
      throw DataError(fmt::format("PSD frequencies must be strictly ascending (row {})", i));
    }
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw DataError(fmt::format("PSD value {} at row {} is not a finite value >= 0", values[i],
                                  i));
    }
  }
}

double Psd::value_at(double omega) const {
  if (freqs.empty() || omega < freqs.front() || omega > freqs.back()) return 0.0;
  const auto it = std::upper_bound(freqs.begin(), freqs.end(), omega);
  if (it == freqs.end()) return values.back();
  const auto i = static_cast<std::size_t>(it - freqs.begin()) - 1;
  const double frac = (omega - freqs[i]) / (freqs[i + 1] - freqs[i]);
  return values[i] + frac * (values[i + 1] - values[i]);
}

double Psd::total_power() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < freqs.size(); ++i) {
    s += 0.5 * (values[i] + values[i + 1]) * (freqs[i + 1] - freqs[i]);
  }
  return s;
}

double Psd::max_nonzero_frequency() const {
  for (std::size_t i = freqs.size(); i-- > 0;) {
    if (values[i] > 0.0) return freqs[i];
  }
  return 0.0;
}

double Psd::min_nonzero_frequency() const {
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (values[i] > 0.0) return freqs[i] > 0.0 ? freqs[i] : freqs[i + 1];
  }
  return 0.0;
}

Psd Psd::flat(double lo, double hi, double level, double zero_until) {
  if (!(hi > lo) || !(lo >= 0.0)) {
    throw InvalidParameterError(fmt::format("flat PSD needs 0 <= lo < hi (lo={}, hi={})", lo, hi));
  }
  Psd psd;
  psd.freqs = {lo, hi};
  psd.values = {level, level};
  if (zero_until > hi) {
    // A short linear ramp to zero keeps the table strictly ascending.
    psd.freqs.push_back(std::nextafter(hi, std::numeric_limits<double>::infinity()));
    psd.values.push_back(0.0);
    psd.freqs.push_back(zero_until);
    psd.values.push_back(0.0);
  }
  return psd;
}

namespace {

// Mean of f over [a, b] by a 16-point rule on 8 panels.
double band_mean(const std::function<double(double)>& f, double a, double b) {
  return gauss_legendre_composite(f, a, b, 8, 16) / (b - a);
}

// Extrapolated integral beyond [lo, hi] assuming a local power law.
double tail_estimate(const std::function<double(double)>& integrand, double lo, double hi) {
  double total = 0.0;
  if (lo > 0.0) {
    const double m1 = band_mean(integrand, lo, 1.5 * lo);
    const double m2 = band_mean(integrand, 1.5 * lo, 2.25 * lo);
    if (m1 > 0.0 && m2 > 0.0) {
      const double slope = std::log(m2 / m1) / std::log(1.5);
      total += slope > -1.0 ? m1 * lo / (slope + 1.0) : std::numeric_limits<double>::infinity();
    }
  }
  const double m1 = band_mean(integrand, hi / 2.25, hi / 1.5);
  const double m2 = band_mean(integrand, hi / 1.5, hi);
  if (m1 > 0.0 && m2 > 0.0) {
    const double slope = std::log(m2 / m1) / std::log(1.5);
    total += slope < -1.0 ? m2 * hi / (-slope - 1.0) : std::numeric_limits<double>::infinity();
  }
  return total;
}

}  // namespace

PsdIntegral integrate_weighted_psd(const Psd& psd, const std::function<double(double)>& weight,
                                   const CoverageWindow& window, double support_duration,
                                   const IntegrationOptions& options) {
  psd.validate();
  PsdIntegral out;
  out.window = window;
  // Slack absorbs unit round trips (Hz <-> rad/s) at the window edges.
  constexpr double kSlack = 1e-9;
  out.covered = psd.freqs.front() <= window.lo * (1.0 + kSlack) &&
                psd.freqs.back() >= window.hi * (1.0 - kSlack);
  if (!out.covered && !options.allow_partial_coverage) {
    throw CoverageError(fmt::format(
        "PSD spans [{}, {}] rad/s but must cover [{}, {}] rad/s; extend it or allow partial "
        "coverage",
        psd.freqs.front(), psd.freqs.back(), window.lo, window.hi));
  }
  if (!(support_duration > 0.0)) {
    throw InvalidParameterError("weight support duration must be > 0");
  }
  // The weight oscillates in w with period 2 pi / support_duration.
  const double osc = options.oscillation_fraction * kTwoPi / support_duration;
  // Panel edges: split at every tabulated point, then by oscillation and relative width.
  std::vector<std::pair<double, double>> panels;
  for (std::size_t i = 0; i + 1 < psd.freqs.size(); ++i) {
    if (psd.values[i] == 0.0 && psd.values[i + 1] == 0.0) continue;
    double x = psd.freqs[i];
    const double end = psd.freqs[i + 1];
    while (x < end) {
      const double w = x > 0.0 ? std::min(osc, options.relative_fraction * x) : osc;
      const double next = std::min(end, x + w);
      panels.emplace_back(x, next);
      if (end - next < 1e-12 * end) break;
      x = next;
    }
    if (!panels.empty() && panels.back().second < end) panels.back().second = end;
  }
  out.panels = panels.size();

  auto integrand = [&](double omega) { return weight(omega) * psd.value_at(omega); };
  const auto order = static_cast<std::size_t>(std::max(1, options.order));
  gauss_legendre(order);  // build the rule before any worker needs it
  std::vector<double> parts(panels.size());
  for_each_index(panels.size(), options.exec, [&](std::size_t p) {
    parts[p] = gauss_legendre_panel(integrand, panels[p].first, panels[p].second, order);
  });
  out.value = pairwise_sum(parts);
  out.truncation_estimate = tail_estimate(
      [&](double omega) { return weight(omega) * psd.value_at(std::clamp(
                                                     omega, psd.freqs.front(), psd.freqs.back())); },
      psd.freqs.front(), psd.freqs.back());
  return out;
}

PsdIntegral phase_variance_from_psd(const Psd& s_phi, const SensitivityProfile& profile,
                                    const IntegrationOptions& options) {
  profile.validate();
  auto weight = [&](double omega) {
    return omega * omega * std::norm(transfer_function_analytic(omega, profile));
  };
  return integrate_weighted_psd(s_phi, weight, coverage_window(profile), profile.duration(),
                                options);
}

PsdIntegral allan_from_acceleration_psd(const Psd& s_a, const SensitivityProfile& profile,
                                        double k_eff, double cycle_time,
                                        const VibrationOptions& options) {
  profile.validate();
  if (!(cycle_time >= profile.duration())) {
    throw InvalidParameterError(fmt::format("cycle time {} s is shorter than the sequence ({} s)",
                                            cycle_time, profile.duration()));
  }
  const double tau = options.averaging_time > 0.0 ? options.averaging_time : cycle_time;
  std::function<double(double)> weight;
  double prefactor = 0.0;
  if (options.weighting == VibrationWeighting::Printed) {
    prefactor = k_eff * k_eff / cycle_time;
    weight = [&](double omega) {
      return std::norm(transfer_function_analytic(omega, profile)) / std::pow(omega, 4);
    };
  } else {
    prefactor = k_eff * k_eff * cycle_time / tau;
    weight = [&](double omega) {
      return std::norm(transfer_function_analytic(omega, profile)) / (omega * omega);
    };
  }
  PsdIntegral out = integrate_weighted_psd(s_a, weight, coverage_window(profile),
                                           profile.duration(), options.integration);
  out.value *= prefactor;
  out.truncation_estimate *= prefactor;
  return out;
}

}  // namespace gravsim::noise
