#include "gravsim/measurement.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gravsim/trajectory.hpp"

namespace gravsim::measurement {

namespace {

struct CosineFit {
  double a = 0.0;
  double b = 0.0;
  double theta = 0.0;
  double sse = 0.0;
  int iterations = 0;
  Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
};

double wrap_phase(double x) { return std::remainder(x, kTwoPi); }

double sum_squared_error(const std::vector<double>& u, const std::vector<double>& y, double a,
                         double b, double theta) {
  std::vector<double> sq(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = y[i] - (a - b * std::cos(u[i] - theta));
    sq[i] = r * r;
  }
  return pairwise_sum(sq);
}

// Linear least squares for (A, B) at fixed theta.
void solve_linear(const std::vector<double>& u, const std::vector<double>& y, double theta,
                  double& a, double& b) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Eigen::Vector2d row(1.0, -std::cos(u[i] - theta));
    m += row * row.transpose();
    rhs += row * y[i];
  }
  const Eigen::Vector2d sol = m.ldlt().solve(rhs);
  a = sol(0);
  b = sol(1);
}

CosineFit fit_cosine(const std::vector<double>& u, const std::vector<double>& y,
                     const FitOptions& options) {
  CosineFit best;
  best.sse = std::numeric_limits<double>::infinity();
  const int grid = std::max(8, options.seed_grid);
  for (int j = 0; j < grid; ++j) {
    const double theta = kTwoPi * j / grid;
    double a = 0.0;
    double b = 0.0;
    solve_linear(u, y, theta, a, b);
    const double sse = sum_squared_error(u, y, a, b, theta);
    if (sse < best.sse) {
      best.a = a;
      best.b = b;
      best.theta = theta;
      best.sse = sse;
    }
  }

  // Levenberg-Marquardt on (A, B, theta).
  double lambda = 1e-3;
  const std::size_t n = u.size();
  bool converged = false;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double c = std::cos(u[i] - best.theta);
      const double s = std::sin(u[i] - best.theta);
      const Eigen::Vector3d row(1.0, -c, -best.b * s);
      jtj += row * row.transpose();
      jtr += row * (y[i] - (best.a - best.b * c));
    }
    best.jtj = jtj;
    bool accepted = false;
    Eigen::Vector3d step = Eigen::Vector3d::Zero();
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Eigen::Matrix3d damped = jtj;
      for (int d = 0; d < 3; ++d) damped(d, d) *= 1.0 + lambda;
      step = damped.ldlt().solve(jtr);
      const double sse = sum_squared_error(u, y, best.a + step(0), best.b + step(1),
                                           best.theta + step(2));
      if (std::isfinite(sse) && sse <= best.sse) {
        best.a += step(0);
        best.b += step(1);
        best.theta += step(2);
        best.sse = sse;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    const double scale = std::max(1.0, std::abs(best.a) + std::abs(best.b));
    if (!accepted || (std::abs(step(0)) < 1e-13 * scale && std::abs(step(1)) < 1e-13 * scale &&
                      std::abs(step(2)) < 1e-12)) {
      converged = true;
      break;
    }
  }
  best.iterations = it + 1;
  if (!converged || !std::isfinite(best.sse) || !std::isfinite(best.theta)) {
    throw FitError(fmt::format(
        "cosine fit did not converge after {} iterations (A={}, B={}, theta={}, SSE={})",
        best.iterations, best.a, best.b, best.theta, best.sse));
  }
  if (!(std::abs(best.b) > 1e-9)) {
    throw FitError(fmt::format("fitted fringe contrast {} is too small to locate a null", best.b));
  }
  return best;
}

}  // namespace

void FringeScan::validate() const {
  if (betas.size() != probabilities.size() || betas.size() != measured.size()) {
    throw DataError(fmt::format("scan columns differ in length ({}, {}, {})", betas.size(),
                                probabilities.size(), measured.size()));
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(probabilities[i] >= 0.0 && probabilities[i] <= 1.0) ||
        !(measured[i] >= 0.0 && measured[i] <= 1.0)) {
      throw DataError(fmt::format("scan row {} has a probability outside [0, 1]", i));
    }
  }
}

double ideal_fringe(double beta, double k_eff, double g_true, double T, double dphi_laser) {
  return 0.5 * (1.0 - std::cos(trajectory::chirped_phase(beta, k_eff, g_true, T, dphi_laser)));
}

double fringe_period(double T) {
  if (!(T > 0.0)) throw InvalidParameterError(fmt::format("T must be > 0, got {}", T));
  return kTwoPi / (T * T);
}

std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x5eedu};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
}

double detect(double p_ideal, std::uint64_t n_atoms, std::mt19937_64& rng) {
  if (n_atoms < 1) throw InvalidParameterError("detection needs n_atoms >= 1");
  if (!(p_ideal >= 0.0 && p_ideal <= 1.0)) {
    throw InvalidParameterError(fmt::format("probability {} is outside [0, 1]", p_ideal));
  }
  std::binomial_distribution<std::uint64_t> binom(n_atoms, p_ideal);
  return static_cast<double>(binom(rng)) / static_cast<double>(n_atoms);
}

void ScanConfig::validate() const {
  if (!(T > 0.0)) throw InvalidParameterError(fmt::format("T must be > 0, got {}", T));
  if (k_eff == 0.0) throw InvalidParameterError("k_eff must be nonzero");
  if (n_points < 4) throw InvalidParameterError("a scan needs at least 4 points");
  if (!(span_periods > 0.0)) throw InvalidParameterError("scan span must be > 0 fringes");
}

std::vector<double> beta_grid(const ScanConfig& config) {
  config.validate();
  const double span = config.span_periods * fringe_period(config.T);
  const double c = config.center();
  std::vector<double> betas(config.n_points);
  for (std::size_t i = 0; i < config.n_points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(config.n_points - 1) - 0.5;
    betas[i] = c + frac * span;
  }
  return betas;
}

FringeScan simulate_scan(const ScanConfig& config, Execution exec) {
  return simulate_scan(beta_grid(config), config, exec);
}

FringeScan simulate_scan(std::vector<double> betas, const ScanConfig& config, Execution exec) {
  if (!(config.T > 0.0)) throw InvalidParameterError(fmt::format("T must be > 0, got {}", config.T));
  FringeScan scan;
  scan.betas = std::move(betas);
  scan.n_atoms = config.n_atoms;
  scan.seed = config.seed;
  const std::size_t n = scan.betas.size();
  scan.probabilities.resize(n);
  scan.measured.resize(n);
  auto point = [&](std::size_t i) {
    const double p = ideal_fringe(scan.betas[i], config.k_eff, config.g_true, config.T,
                                  config.dphi_laser);
    scan.probabilities[i] = p;
    if (config.n_atoms == 0) {
      scan.measured[i] = p;
    } else {
      auto rng = shot_rng(config.seed, i);
      scan.measured[i] = detect(p, config.n_atoms, rng);
    }
  };
  for_each_index(n, exec, point);
  return scan;
}

GravityEstimate estimate_g(const FringeScan& scan, double k_eff, double T,
                           const FitOptions& options) {
  scan.validate();
  if (k_eff == 0.0) throw InvalidParameterError("k_eff must be nonzero");
  const double period = fringe_period(T);
  const std::size_t n = scan.betas.size();
  if (n < 4) {
    throw InsufficientDataError(fmt::format("fringe fit needs at least 4 points, got {}", n));
  }
  const auto [lo_it, hi_it] = std::minmax_element(scan.betas.begin(), scan.betas.end());
  const double periods = (*hi_it - *lo_it) / period;
  if (periods < 1.5) {
    throw AmbiguityError(fmt::format(
        "scan spans {:.3f} fringe periods; at least 1.5 are needed to locate the null", periods));
  }
  if (static_cast<double>(n) / periods < 8.0) {
    throw AmbiguityError(fmt::format("scan has {:.2f} points per fringe period; need at least 8",
                                     static_cast<double>(n) / periods));
  }

  // Work in phase units around the scan centre so the fit is well conditioned.
  const double center = 0.5 * (*lo_it + *hi_it);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = (scan.betas[i] - center) * T * T;
  CosineFit fit = fit_cosine(u, scan.measured, options);
  if (fit.b < 0.0) {
    fit.b = -fit.b;
    fit.theta += kPi;
  }
  fit.theta = wrap_phase(fit.theta);

  GravityEstimate est;
  est.offset = fit.a;
  est.amplitude = fit.b;
  est.iterations = fit.iterations;
  est.fit_residual = std::sqrt(fit.sse / static_cast<double>(n));
  double beta_null = center + (fit.theta + options.dphi_laser) / (T * T);
  beta_null += std::round((center - beta_null) / period) * period;
  est.beta_null = beta_null;
  est.g_hat = beta_null / k_eff;

  const double dof = static_cast<double>(n) - 3.0;
  const double s2 = dof > 0.0 ? fit.sse / dof : 0.0;
  const Eigen::Matrix3d cov = s2 * fit.jtj.inverse();
  est.sigma_beta = std::sqrt(std::max(0.0, cov(2, 2))) / (T * T);
  est.sigma_g = est.sigma_beta / std::abs(k_eff);
  return est;
}

GravityEstimate estimate_g_two_t(const FringeScan& short_scan, double T_short,
                                 const FringeScan& long_scan, double T_long, double k_eff,
                                 const FitOptions& options) {
  if (!(T_long > T_short)) {
    throw InvalidParameterError(
        fmt::format("two-T mode needs T_long > T_short (got {}, {})", T_long, T_short));
  }
  const GravityEstimate coarse = estimate_g(short_scan, k_eff, T_short, options);
  GravityEstimate fine = estimate_g(long_scan, k_eff, T_long, options);
  const double period = fringe_period(T_long);
  if (!(4.0 * coarse.sigma_beta < period)) {
    throw AmbiguityError(fmt::format(
        "short-T uncertainty {} rad/s^2 cannot pick a fringe of width {} rad/s^2",
        coarse.sigma_beta, period));
  }
  fine.beta_null += std::round((coarse.beta_null - fine.beta_null) / period) * period;
  fine.g_hat = fine.beta_null / k_eff;
  return fine;
}

std::vector<GravityEstimate> estimate_ensemble(const ScanConfig& config, std::size_t n_seeds,
                                               Execution exec, const FitOptions& options) {
  config.validate();
  std::vector<GravityEstimate> out(n_seeds);
  auto member = [&](std::size_t i) {
    ScanConfig c = config;
    c.seed = derive_seed(config.seed, i);
    const FringeScan scan = simulate_scan(c, Execution::Serial);
    out[i] = estimate_g(scan, c.k_eff, c.T, options);
  };
  for_each_index(n_seeds, exec, member);
  return out;
}

}  // namespace gravsim::measurement
