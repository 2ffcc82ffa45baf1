#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gravsim/noise.hpp"

namespace gravsim::noise {

double allan_variance(std::span<const double> samples, std::size_t m, bool overlapping) {
  if (m == 0) throw InvalidParameterError("Allan block size must be >= 1 sample");
  const std::size_t n = samples.size() / m;
  if (n < 2) {
    throw InsufficientDataError(fmt::format(
        "{} samples give {} block(s) of {} samples; need at least 2", samples.size(), n, m));
  }
  if (!overlapping) {
    std::vector<double> means(n);
    for (std::size_t i = 0; i < n; ++i) {
      means[i] = pairwise_sum(samples.subspan(i * m, m)) / static_cast<double>(m);
    }
    std::vector<double> sq(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = means[i + 1] - means[i];
      sq[i] = d * d;
    }
    return pairwise_sum(sq) / (2.0 * static_cast<double>(n - 1));
  }
  // Overlapping estimator from long-double prefix sums.
  const std::size_t len = samples.size();
  std::vector<long double> prefix(len + 1, 0.0L);
  for (std::size_t i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + samples[i];
  const std::size_t terms = len - 2 * m + 1;
  std::vector<double> sq(terms);
  for (std::size_t j = 0; j < terms; ++j) {
    const long double d = (prefix[j + 2 * m] - 2.0L * prefix[j + m] + prefix[j]) /
                          static_cast<long double>(m);
    sq[j] = static_cast<double>(d * d);
  }
  return pairwise_sum(sq) / (2.0 * static_cast<double>(terms));
}

AllanResult allan_deviation(const TimeSeries& series, std::span<const double> tau_avgs,
                            const AllanOptions& options) {
  series.validate();
  const std::size_t count = tau_avgs.size();
  std::vector<std::size_t> block(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    // Snap down to a whole number of samples; the small slack absorbs rounding in tau/dt.
    const double m = std::floor(tau_avgs[i] / series.dt * (1.0 + 1e-12));
    block[i] = m >= 1.0 ? static_cast<std::size_t>(m) : 0;
  }
  std::vector<double> variance(count, -1.0);
  const std::span<const double> data(series.samples);
  auto evaluate = [&](std::size_t i) {
    if (block[i] == 0 || data.size() / block[i] < 2) return;
    variance[i] = allan_variance(data, block[i], options.overlapping);
  };
  for_each_index(count, options.exec, evaluate);

  AllanResult out;
  for (std::size_t i = 0; i < count; ++i) {
    if (variance[i] < 0.0) {
      out.skipped.push_back(tau_avgs[i]);
      continue;
    }
    out.requested.push_back(tau_avgs[i]);
    out.tau_avgs.push_back(static_cast<double>(block[i]) * series.dt);
    out.adevs.push_back(std::sqrt(variance[i]));
    out.n_blocks.push_back(data.size() / block[i]);
  }
  if (out.tau_avgs.empty()) {
    throw InsufficientDataError(
        fmt::format("no averaging time leaves at least 2 blocks in {} samples", data.size()));
  }
  return out;
}

std::vector<double> log_tau_grid(const TimeSeries& series, int points_per_decade) {
  series.validate();
  if (points_per_decade < 1) throw InvalidParameterError("points_per_decade must be >= 1");
  const double max_m = static_cast<double>(series.samples.size() / 2);
  std::set<std::size_t> blocks;
  const double step = std::pow(10.0, 1.0 / points_per_decade);
  for (double m = 1.0; m <= max_m * (1.0 + 1e-12); m *= step) {
    blocks.insert(static_cast<std::size_t>(std::floor(m + 1e-9)));
  }
  std::vector<double> taus;
  for (std::size_t m : blocks) taus.push_back(static_cast<double>(m) * series.dt);
  return taus;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("log-log slope needs two equal-length series of >= 2 points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw DataError("log-log slope needs strictly positive values");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw InsufficientDataError("sample variance needs >= 2 values");
  const double mean = pairwise_sum(values) / static_cast<double>(values.size());
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  return pairwise_sum(sq) / static_cast<double>(values.size() - 1);
}

}  // namespace gravsim::noise
