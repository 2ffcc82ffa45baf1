// Serial reference vs OpenMP path for the data-parallel kernels.
// Arg 0 is Execution::Serial, arg 1 is Execution::Parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "gravsim/measurement.hpp"
#include "gravsim/noise.hpp"
#include "gravsim/twolevel.hpp"

using namespace gravsim;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_SweepSequences(benchmark::State& state) {
  std::vector<twolevel::SequenceParams> batch(20000);
  const double rabi = kTwoPi * 50e3;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    batch[i].phases = {0.0, 0.0, 1e-4 * static_cast<double>(i)};
    batch[i].T = 1e-3;
    batch[i].tau_p = kPi / rabi;
    batch[i].rabi = rabi;
    batch[i].delta = 1e-3 * rabi;
  }
  for (auto _ : state) benchmark::DoNotOptimize(twolevel::sweep_sequences(batch, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(batch.size()));
}
BENCHMARK(BM_SweepSequences)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PhaseVariance(benchmark::State& state) {
  const auto profile = noise::SensitivityProfile::from_pulse(1e-3, 20e-6);
  const auto win = noise::coverage_window(profile);
  const noise::Psd psd = noise::Psd::flat(win.lo, win.hi, 1e-10);
  noise::IntegrationOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(noise::phase_variance_from_psd(psd, profile, opt));
}
BENCHMARK(BM_PhaseVariance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PhaseShots(benchmark::State& state) {
  const auto profile = noise::SensitivityProfile::from_pulse(1e-3, 20e-6);
  const noise::Psd psd = noise::Psd::flat(100.0, 1e5, 1e-10);
  const noise::TimeSeries phase = noise::synthesize_noise(psd, 2.0, 2.5e-6, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(noise::phase_noise_shots(phase, profile, 4e-3, 490, exec_of(state)));
  }
}
BENCHMARK(BM_PhaseShots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VibrationShots(benchmark::State& state) {
  const auto profile = noise::SensitivityProfile::from_pulse(1e-3, 20e-6);
  const noise::Psd psd = noise::Psd::flat(100.0, 1e5, 1e-8);
  const noise::TimeSeries accel = noise::synthesize_noise(psd, 2.0, 2.5e-6, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(noise::vibration_shots(accel, profile, kDefaultKeff, 4e-3, 490, exec_of(state)));
  }
}
BENCHMARK(BM_VibrationShots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Allan(benchmark::State& state) {
  const noise::TimeSeries s = noise::synthesize_noise(noise::Psd::flat(10.0, 3000.0, 1e-3), 100.0, 1e-3, 3);
  const std::vector<double> taus = noise::log_tau_grid(s);
  noise::AllanOptions opt;
  opt.overlapping = true;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(noise::allan_deviation(s, taus, opt));
}
BENCHMARK(BM_Allan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
  measurement::ScanConfig cfg;
  cfg.n_atoms = 100000;
  cfg.seed = 11;
  for (auto _ : state) benchmark::DoNotOptimize(measurement::estimate_ensemble(cfg, 200, exec_of(state)));
}
BENCHMARK(BM_Ensemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
