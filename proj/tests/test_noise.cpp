#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "gravsim/noise.hpp"
#include "gravsim/quadrature.hpp"

using namespace gravsim;
using namespace gravsim::noise;
using gravsim::testing::for_all;
using gravsim::testing::Gen;

namespace {

constexpr double kK = kDefaultKeff;

SensitivityProfile short_pulses(double T = 0.1) { return SensitivityProfile::from_pulse(T, 1e-8 * T); }

std::vector<double> white(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> out(n);
  for (auto& x : out) x = normal(rng);
  return out;
}

// Zero table padded out to the coverage window around a narrow rectangle.
Psd narrow_band(const CoverageWindow& win, double w0, double half, double level) {
  Psd p;
  p.freqs = {win.lo, w0 - half * 1.001, w0 - half, w0 + half, w0 + half * 1.001, win.hi};
  p.values = {0.0, 0.0, level, level, 0.0, 0.0};
  return p;
}

}  // namespace

TEST_CASE("time series and PSD tables") {
  TimeSeries s{{0.0, 1.0, 4.0}, 0.5, 2.0};
  CHECK_NOTHROW(s.validate());
  CHECK(s.value_at(2.25) == doctest::Approx(0.5));
  CHECK(s.value_at(3.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(s.value_at(3.5), DataError);
  CHECK_THROWS_AS((TimeSeries{{1.0}, 0.1, 0.0}.validate()), InsufficientDataError);
  CHECK_THROWS_AS((TimeSeries{{1.0, 2.0}, 0.0, 0.0}.validate()), DataError);

  const Psd flat = Psd::flat(1.0, 3.0, 2.0, 10.0);
  CHECK_NOTHROW(flat.validate());
  CHECK(flat.value_at(2.0) == 2.0);
  CHECK(flat.value_at(0.5) == 0.0);
  CHECK(flat.value_at(5.0) == 0.0);
  CHECK(flat.value_at(11.0) == 0.0);
  CHECK(flat.total_power() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(flat.max_nonzero_frequency() == 3.0);
  CHECK(flat.min_nonzero_frequency() == 1.0);

  Psd bad{{1.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(bad.validate(), DataError);
  bad = Psd{{1.0, 2.0}, {0.0, -1.0}};
  CHECK_THROWS_AS(bad.validate(), DataError);
  bad = Psd{{1.0, 2.0}, {0.0}};
  CHECK_THROWS_AS(bad.validate(), DataError);
  CHECK_THROWS_AS(Psd::flat(2.0, 1.0, 1.0), InvalidParameterError);
}

TEST_CASE("sensitivity profile validation") {
  CHECK_THROWS_AS(SensitivityProfile::from_pulse(1e-6, 1e-5), InvalidParameterError);
  CHECK_THROWS_AS(SensitivityProfile::from_pulse(0.1, 0.0), InvalidParameterError);
  SensitivityProfile p{0.1, 1e-5, 1.0};
  CHECK_THROWS_AS(p.validate(), InvalidParameterError);
}

TEST_CASE("sensitivity function") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
  const double h = 0.5 * p.tau_p;
  CHECK(sensitivity_g(h + 0.5 * p.T, p) == -1.0);
  CHECK(sensitivity_g(3 * h + 1.5 * p.T, p) == 1.0);
  CHECK(sensitivity_g(p.pi_center(), p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(sensitivity_g(-1e-6, p) == 0.0);
  CHECK(sensitivity_g(p.duration() + 1e-6, p) == 0.0);
  CHECK(sensitivity_g(0.0, p) == 0.0);
  CHECK(sensitivity_g(p.duration(), p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  SUBCASE("odd about the pi pulse") {
    for_all(2000, 401, [&](Gen& g, int) {
      const double u = g.uniform(0.0, 0.6 * p.duration());
      CHECK(std::abs(sensitivity_g(p.pi_center() + u, p) + sensitivity_g(p.pi_center() - u, p)) <= 1e-12);
      const double v = sensitivity_g(g.uniform(-1e-3, 3e-3), p);
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    });
  }
  SUBCASE("continuous across every pulse edge") {
    for (double edge : {h, p.T + h, p.T + 3 * h, 2 * p.T + 3 * h}) {
      CHECK(std::abs(sensitivity_g(edge * (1 + 1e-12), p) - sensitivity_g(edge * (1 - 1e-12), p)) < 1e-6);
    }
  }
  SUBCASE("derivative against finite differences") {
    for_all(200, 402, [&](Gen& g, int) {
      const double t = g.uniform(0.0, p.duration());
      const double d = 1e-11;
      const double fd = (sensitivity_g(t + d, p) - sensitivity_g(t - d, p)) / (2 * d);
      // Skip the corner points where g_s has a kink.
      bool near_edge = false;
      for (double e : {0.0, h, p.T + h, p.T + 3 * h, 2 * p.T + 3 * h, p.duration()}) {
        near_edge |= std::abs(t - e) < 1e-9;
      }
      if (!near_edge) CHECK(sensitivity_g_derivative(t, p) == doctest::Approx(fd).epsilon(1e-4).scale(p.omega_r));
    });
  }
  SUBCASE("printed piecewise values") {
    const double w = p.omega_r;
    CHECK(sensitivity_g(1e-6, p, SensitivityForm::Printed) == doctest::Approx(std::sin(w * 1e-6)));
    CHECK(sensitivity_g(0.4 * p.T, p, SensitivityForm::Printed) == doctest::Approx(std::sin(w * 0.4 * p.T)));
    CHECK(sensitivity_g(p.T, p, SensitivityForm::Printed) == 1.0);
    CHECK(sensitivity_g(1.7 * p.T, p, SensitivityForm::Printed) == doctest::Approx(std::sin(w * 0.7 * p.T)));
    CHECK(sensitivity_g(2.5 * p.T, p, SensitivityForm::Printed) == 0.0);
  }
}

TEST_CASE("DC rejection and acceleration kernel") {
  for_all(50, 411, [](Gen& g, int) {
    const double T = g.log_uniform(1e-3, 0.3);
    const SensitivityProfile p = SensitivityProfile::from_pulse(T, g.uniform(1e-3, 0.2) * T);
    const double integral = gauss_legendre_composite([&](double t) { return sensitivity_g(t, p); }, 0.0,
                                                     p.duration(), 4096, 8);
    CHECK(std::abs(integral) < 1e-9 * p.duration());
    CHECK(acceleration_kernel(0.0, p) == 0.0);
    CHECK(std::abs(acceleration_kernel(p.duration(), p)) < 1e-12 * p.duration());
    // Half of each of the first two pulses contributes 1/W, the dark interval T.
    CHECK(acceleration_kernel(p.pi_center(), p) == doctest::Approx(p.T + 2.0 / p.omega_r).epsilon(1e-12));
  });
}

TEST_CASE("constant acceleration reproduces k a T^2") {
  for (double T : {0.01, 0.1}) {
    const SensitivityProfile p = short_pulses(T);
    for (double a : {9.81, -1.62, 1e-6}) {
      const double phi = acceleration_response([a](double) { return a; }, p, kK);
      CHECK(std::abs(phi - kK * a * T * T) <= 1e-6 * std::abs(kK * a * T * T));
    }
  }
  SUBCASE("finite pulses against an independent moment integral") {
    // k a integral f = k a integral t g_s(t) dt after integrating by parts.
    const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 5e-5);
    const double moment = simpson([&](double t) { return t * sensitivity_g(t, p); }, 0.0, p.duration(), 200000);
    CHECK(acceleration_response([](double) { return 2.0; }, p, kK) ==
          doctest::Approx(kK * 2.0 * moment).epsilon(1e-8));
  }
  CHECK(acceleration_response([](double) { return 0.0; }, short_pulses(), kK) == 0.0);
}

TEST_CASE("sinusoidal acceleration follows the transfer function") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-2, 1e-5);
  auto amplitude = [&](double w) {
    const double s = acceleration_response([w](double t) { return std::sin(w * t); }, p, 1.0);
    const double c = acceleration_response([w](double t) { return std::cos(w * t); }, p, 1.0);
    return std::hypot(s, c);
  };
  for (double w : {50.0, 700.0, 3000.0, 2e4}) {
    CHECK(amplitude(w) == doctest::Approx(std::abs(transfer_function_analytic(w, p)) / w).epsilon(1e-6));
  }
  // At fringe maxima of sin^2(wT/2) the response falls as 1/w^2.
  const double w1 = 3 * kPi / p.T;
  const double w2 = 41 * kPi / p.T;
  CHECK(amplitude(w1) * w1 * w1 == doctest::Approx(amplitude(w2) * w2 * w2).epsilon(0.02));
  CHECK(amplitude(w2) < 0.01 * amplitude(w1));
}

TEST_CASE("sampled acceleration matches the continuous response") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
  auto a = [](double t) { return 0.3 + std::sin(1500.0 * t) + 0.2 * std::cos(40000.0 * t); };
  // The sequence starts 2e-4 s into a series that begins at t = -1e-4 s.
  TimeSeries shifted;
  shifted.dt = 1e-7;
  shifted.t0 = -1e-4;
  for (std::size_t i = 0; i < 32000; ++i) shifted.samples.push_back(a(shifted.time(i) - 1e-4));
  const double ref = acceleration_response(a, p, kK);
  CHECK(acceleration_response(shifted, 1e-4, p, kK) == doctest::Approx(ref).epsilon(1e-5));
  CHECK_THROWS_AS(acceleration_response(shifted, 2e-3, p, kK), DataError);
}

TEST_CASE("laser phase response") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
  TimeSeries s;
  s.dt = 1e-7;
  s.samples.assign(30000, 0.7);
  CHECK(std::abs(phase_response(s, 0.0, p)) < 1e-12);
  // A phase jump inside the first dark interval shifts the output by -jump.
  for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] = s.time(i) > 5e-4 ? 0.25 : 0.0;
  CHECK(phase_response(s, 0.0, p) == doctest::Approx(-0.25).epsilon(1e-9));
  // ... and by +jump inside the second.
  for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] = s.time(i) > 1.5e-3 ? 0.25 : 0.0;
  CHECK(phase_response(s, 0.0, p) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("transfer function") {
  SUBCASE("square-profile limit") {
    const double T = 0.1;
    const SensitivityProfile p = short_pulses(T);
    for_all(200, 421, [&](Gen& g, int) {
      const double w = g.uniform(1e-3, kTwoPi * 10.0 / T);
      const double sq = transfer_function_square(w, T);
      const double num = transfer_function(w, p);
      const double s2 = std::pow(std::sin(0.5 * w * T), 2);
      if (s2 > 0.05) CHECK(std::abs(num - sq) <= 1e-3 * sq);
      CHECK(std::abs(num - sq) <= 1e-3 * 4.0 / w);
    });
    CHECK(transfer_function(kTwoPi / T, p) < 1e-6 * 4.0 / (kTwoPi / T));
    // Near DC, |G| ~ w integral t g_s dt = w T^2.
    CHECK(transfer_function(1e-6, p) == doctest::Approx(1e-6 * T * T).epsilon(1e-6));
    CHECK_THROWS_AS(transfer_function(0.0, p), InvalidParameterError);
  }
  SUBCASE("quadrature converges and matches the closed form") {
    const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
    for_all(100, 422, [&](Gen& g, int) {
      const double w = g.log_uniform(10.0, 100.0 * p.omega_r);
      const double a = transfer_function(w, p, 1);
      const double b = transfer_function(w, p, 2);
      CHECK(std::abs(a - b) <= 1e-6 * b + 1e-15);
      CHECK(std::abs(std::abs(transfer_function_analytic(w, p)) - b) <= 1e-8 * b + 1e-15);
    });
  }
}

TEST_CASE("phase variance from a PSD") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
  const CoverageWindow win = coverage_window(p);
  CHECK(win.lo == doctest::Approx(kTwoPi * 0.01 / p.T));
  CHECK(win.hi == doctest::Approx(100.0 * p.omega_r));

  const Psd zero{{win.lo, win.hi}, {0.0, 0.0}};
  CHECK(phase_variance_from_psd(zero, p).value == 0.0);

  SUBCASE("narrow band") {
    for (double w0 : {2.3e3, 4.1e4, 2.2e5}) {
      const double half = 1e-4 * w0;
      const double weight = 0.37;
      const Psd s = narrow_band(win, w0, half, weight / (2 * half));
      const double expected = std::pow(w0 * std::abs(transfer_function_analytic(w0, p)), 2) * s.total_power();
      CHECK(s.total_power() == doctest::Approx(weight).epsilon(1e-3));
      CHECK(phase_variance_from_psd(s, p).value == doctest::Approx(expected).epsilon(1e-4));
    }
  }
  SUBCASE("coverage") {
    const Psd partial = Psd::flat(win.lo * 2, win.hi, 1.0);
    CHECK_THROWS_AS(phase_variance_from_psd(partial, p), CoverageError);
    IntegrationOptions opt;
    opt.allow_partial_coverage = true;
    const PsdIntegral r = phase_variance_from_psd(partial, p, opt);
    CHECK_FALSE(r.covered);
    CHECK(r.value > 0.0);
  }
  SUBCASE("white noise has a finite, converged integral") {
    const Psd s = Psd::flat(win.lo, win.hi, 1e-9);
    IntegrationOptions coarse;
    IntegrationOptions fine;
    fine.oscillation_fraction = 0.1;
    fine.relative_fraction = 0.1;
    fine.order = 12;
    const PsdIntegral a = phase_variance_from_psd(s, p, coarse);
    const PsdIntegral b = phase_variance_from_psd(s, p, fine);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
    CHECK(a.truncation_estimate >= 0.0);
    IntegrationOptions serial = coarse;
    serial.exec = Execution::Serial;
    CHECK(phase_variance_from_psd(s, p, serial).value == a.value);
  }
}

TEST_CASE("vibration Allan variance from an acceleration PSD") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
  const CoverageWindow win = coverage_window(p);
  const Psd s = Psd::flat(win.lo, win.hi, 1e-8);
  const Psd zero{{win.lo, win.hi}, {0.0, 0.0}};
  CHECK(allan_from_acceleration_psd(zero, p, kK, 4e-3).value == 0.0);
  CHECK_THROWS_AS(allan_from_acceleration_psd(s, p, kK, 1e-3), InvalidParameterError);

  const double a = allan_from_acceleration_psd(s, p, kK, 4e-3).value;
  const double b = allan_from_acceleration_psd(s, p, kK, 8e-3).value;
  CHECK(b == doctest::Approx(0.5 * a).epsilon(1e-12));

  VibrationOptions consistent;
  consistent.weighting = VibrationWeighting::Consistent;
  const double c1 = allan_from_acceleration_psd(s, p, kK, 4e-3, consistent).value;
  consistent.averaging_time = 8e-3;
  CHECK(allan_from_acceleration_psd(s, p, kK, 4e-3, consistent).value == doctest::Approx(0.5 * c1).epsilon(1e-12));
  consistent.averaging_time = 0.0;
  // Per-shot phase variance is independent of how often shots are taken.
  CHECK(allan_from_acceleration_psd(s, p, kK, 8e-3, consistent).value == doctest::Approx(c1).epsilon(1e-12));

  SUBCASE("narrow band against the closed forms") {
    const double w0 = 3.3e3;
    const double half = 1e-4 * w0;
    const Psd nb = narrow_band(win, w0, half, 1.0 / (2 * half));
    const double g2 = std::norm(transfer_function_analytic(w0, p));
    const double w = nb.total_power();
    CHECK(allan_from_acceleration_psd(nb, p, kK, 4e-3).value ==
          doctest::Approx(kK * kK / 4e-3 * g2 / std::pow(w0, 4) * w).epsilon(1e-4));
    consistent.averaging_time = 0.0;
    CHECK(allan_from_acceleration_psd(nb, p, kK, 4e-3, consistent).value ==
          doctest::Approx(kK * kK * g2 / (w0 * w0) * w).epsilon(1e-4));
  }
}

TEST_CASE("noise synthesis") {
  SUBCASE("zero target") {
    const TimeSeries s = synthesize_noise(Psd{{0.0, 1e3}, {0.0, 0.0}}, 1.0, 1e-3, 1);
    for (double x : s.samples) CHECK(x == 0.0);
  }
  SUBCASE("resolution errors") {
    const Psd p = Psd::flat(10.0, 1e4, 1.0);
    CHECK_THROWS_AS(synthesize_noise(p, 100.0, 1e-3, 1), ResolutionError);
    CHECK_THROWS_AS(synthesize_noise(p, 5.0, 1e-4, 1), ResolutionError);
    CHECK_NOTHROW(synthesize_noise(p, 10.0, 1e-4, 1));
  }
  const double lo = 10.0;
  const double hi = 2e4;
  const Psd target = Psd::flat(lo, hi, 3e-6);
  const double dt = 1e-4;
  const TimeSeries a = synthesize_noise(target, 50.0, dt, 11);
  const TimeSeries b = synthesize_noise(target, 50.0, dt, 12);
  const std::size_t n = a.samples.size();

  SUBCASE("Parseval") {
    CHECK(sample_variance(a.samples) == doctest::Approx(target.total_power()).epsilon(0.1));
  }
  SUBCASE("periodogram per half-decade band") {
    const Psd est = periodogram(a);
    for (double band = lo * 1.01; band * std::sqrt(10.0) <= hi; band *= std::sqrt(10.0)) {
      double sum = 0.0;
      int count = 0;
      for (std::size_t k = 0; k < est.freqs.size(); ++k) {
        if (est.freqs[k] >= band && est.freqs[k] < band * std::sqrt(10.0)) {
          sum += est.values[k];
          ++count;
        }
      }
      REQUIRE(count > 10);
      CHECK(sum / count == doctest::Approx(3e-6).epsilon(0.2));
    }
  }
  SUBCASE("determinism and independence") {
    const TimeSeries again = synthesize_noise(target, 50.0, dt, 11);
    CHECK(again.samples == a.samples);
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ab += a.samples[i] * b.samples[i];
      aa += a.samples[i] * a.samples[i];
      bb += b.samples[i] * b.samples[i];
    }
    CHECK(std::abs(ab / std::sqrt(aa * bb)) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("Allan estimator") {
  SUBCASE("constant input") {
    const TimeSeries s{std::vector<double>(1000, 3.25), 0.01, 0.0};
    const std::vector<double> taus = log_tau_grid(s);
    for (bool overlapping : {false, true}) {
      const AllanResult r = allan_deviation(s, taus, {overlapping, Execution::Parallel});
      for (double d : r.adevs) CHECK(d == 0.0);
    }
  }
  SUBCASE("alternating +-1") {
    std::vector<double> x(1001);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
    CHECK(allan_variance(x, 1) == 2.0);
    CHECK(allan_variance(x, 2) == 0.0);
  }
  SUBCASE("hand-evaluated blocks") {
    const std::vector<double> x{1.0, 3.0, 2.0, 6.0, 5.0, 4.0, 9.0};
    // Block means for m = 2: 2, 4, 4.5 (sample 7 is dropped).
    CHECK(allan_variance(x, 2) == doctest::Approx((4.0 + 0.25) / 4.0));
    // Overlapping m = 2: d_j = (x_{j+2} + x_{j+3} - x_j - x_{j+1}) / 2.
    const double d0 = (2 + 6 - 1 - 3) / 2.0, d1 = (6 + 5 - 3 - 2) / 2.0, d2 = (5 + 4 - 2 - 6) / 2.0,
                 d3 = (4 + 9 - 6 - 5) / 2.0;
    CHECK(allan_variance(x, 2, true) == doctest::Approx((d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3) / 8.0));
    CHECK_THROWS_AS(allan_variance(x, 4), InsufficientDataError);
    CHECK_THROWS_AS(allan_variance(x, 0), InvalidParameterError);
  }
  SUBCASE("white and random-walk slopes") {
    TimeSeries s{white(1000000, 431), 1e-3, 0.0};
    std::vector<double> taus;
    for (double m = 1; m <= 100; m *= std::pow(10.0, 0.2)) taus.push_back(std::round(m) * s.dt);
    const AllanResult r = allan_deviation(s, taus);
    CHECK(loglog_slope(r.tau_avgs, r.adevs) == doctest::Approx(-0.5).epsilon(0.1));
    CHECK(r.adevs.front() == doctest::Approx(1.0).epsilon(0.01));

    TimeSeries walk = s;
    for (std::size_t i = 1; i < walk.samples.size(); ++i) walk.samples[i] += walk.samples[i - 1];
    std::vector<double> long_taus;
    for (double m = 10; m <= 1000; m *= std::pow(10.0, 0.2)) long_taus.push_back(std::round(m) * s.dt);
    const AllanResult rw = allan_deviation(walk, long_taus, {true, Execution::Parallel});
    CHECK(std::abs(loglog_slope(rw.tau_avgs, rw.adevs) - 0.5) < 0.05);

    const AllanResult ov = allan_deviation(s, taus, {true, Execution::Parallel});
    for (std::size_t i = 0; i < ov.adevs.size(); ++i) CHECK(ov.adevs[i] == doctest::Approx(r.adevs[i]).epsilon(0.05));
    const AllanResult serial = allan_deviation(s, taus, {false, Execution::Serial});
    CHECK(serial.adevs == r.adevs);
  }
  SUBCASE("tau snapping and skipped points") {
    const TimeSeries s{white(100, 432), 0.5, 0.0};
    const std::vector<double> taus{0.5, 1.2, 20.0, 0.1};
    const AllanResult r = allan_deviation(s, taus);
    REQUIRE(r.tau_avgs.size() == 3);
    CHECK(r.tau_avgs[1] == 1.0);
    CHECK(r.requested[1] == 1.2);
    CHECK(r.n_blocks[2] == 2);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0] == 0.1);
    CHECK_THROWS_AS(allan_deviation(s, std::vector<double>{40.0}), InsufficientDataError);
    for (std::size_t m : r.n_blocks) CHECK(m >= 2);
  }
  SUBCASE("tau grid") {
    const TimeSeries s{std::vector<double>(1000, 0.0), 0.1, 0.0};
    const std::vector<double> taus = log_tau_grid(s, 5);
    CHECK(taus.front() == 0.1);
    CHECK(taus.back() <= 50.0 + 1e-12);
    for (std::size_t i = 1; i < taus.size(); ++i) CHECK(taus[i] > taus[i - 1]);
  }
}

TEST_CASE("Monte-Carlo shot kernels") {
  const SensitivityProfile p = SensitivityProfile::from_pulse(1e-3, 2e-5);
  const Psd target = Psd::flat(100.0, 2e5, 1e-10);
  const TimeSeries noise = synthesize_noise(target, 1.0, 5e-6, 7);
  const auto serial = phase_noise_shots(noise, p, 4e-3, 40, Execution::Serial);
  const auto parallel = phase_noise_shots(noise, p, 4e-3, 40, Execution::Parallel);
  CHECK(serial == parallel);
  const auto vs = vibration_shots(noise, p, kK, 4e-3, 40, Execution::Serial);
  const auto vp = vibration_shots(noise, p, kK, 4e-3, 40, Execution::Parallel);
  CHECK(vs == vp);
  CHECK_THROWS_AS(phase_noise_shots(noise, p, 1e-3, 10), InvalidParameterError);
  CHECK_THROWS_AS(phase_noise_shots(noise, p, 4e-3, 300), DataError);
  CHECK(sample_variance(std::vector<double>{1.0, 2.0, 3.0}) == 1.0);
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), InsufficientDataError);
}
