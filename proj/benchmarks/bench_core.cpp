// Microbenchmarks for the hot paths: Fock-state construction, dephasing,
// trace distance, the phase-averaged error probability and the threshold
// solvers. Run the binary directly; see google-benchmark's --benchmark_*
// flags for filtering and repetition control.

#include <benchmark/benchmark.h>

#include "sqpsk/analysis.hpp"
#include "sqpsk/fock.hpp"
#include "sqpsk/gaussian.hpp"
#include "sqpsk/receiver.hpp"

namespace {

using namespace sqpsk;

const SeedState& bench_seed() {
  static const SeedState seed = budget_to_seed({2.0, 0.4}, 0.8);
  return seed;
}

void BM_build_state(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_state(bench_seed(), +1));
  }
}
BENCHMARK(BM_build_state)->Unit(benchmark::kMillisecond);

void BM_dephase(benchmark::State& state) {
  const FockDensityMatrix rho = build_state(bench_seed(), +1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dephase(rho, 0.5));
  }
}
BENCHMARK(BM_dephase)->Unit(benchmark::kMicrosecond);

void BM_trace_distance(benchmark::State& state) {
  const FockDensityMatrix plus = build_state(bench_seed(), +1);
  const FockDensityMatrix minus = build_state(bench_seed(), -1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_distance(plus, minus));
  }
}
BENCHMARK(BM_trace_distance)->Unit(benchmark::kMillisecond);

void BM_homodyne_pdf(benchmark::State& state) {
  const FockDensityMatrix rho = dephase(build_state(bench_seed(), +1), 0.5);
  double x = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(homodyne_pdf_fock(rho, x));
    x = x < 6.0 ? x + 0.1 : -6.0;
  }
}
BENCHMARK(BM_homodyne_pdf)->Unit(benchmark::kMicrosecond);

void BM_error_probability(benchmark::State& state) {
  const double sigma = state.range(0) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(error_probability({2.0, 0.4}, 1.0, {sigma}));
  }
}
BENCHMARK(BM_error_probability)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_g_function(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_function(2.0, 0.5));
  }
}
BENCHMARK(BM_g_function)->Unit(benchmark::kMicrosecond);

void BM_beta_threshold(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        beta_threshold_numeric(2.0, {0.3}, 1.0, Metric::kHomodyne));
  }
}
BENCHMARK(BM_beta_threshold)->Unit(benchmark::kMillisecond);

void BM_gauss_hermite(benchmark::State& state) {
  const int nodes = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(QuadratureRule::gauss_hermite(nodes));
  }
}
BENCHMARK(BM_gauss_hermite)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
