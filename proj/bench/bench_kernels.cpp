// SPDX-License-Identifier: Apache-2.0
// Serial reference against the OpenMP kernels. Run with OMP_NUM_THREADS set
// to compare thread counts; the Serial variants ignore it.

#include <benchmark/benchmark.h>

#include <vector>

#include "exp_sum.hpp"
#include "fracbin/analytics.hpp"
#include "fracbin/sampler.hpp"

namespace {

using fracbin::Exec;
using fracbin::ProcessParams;

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}

// Product-form coefficient table, 64-digit tier.
void BM_GeneralTable(benchmark::State& state) {
  const ProcessParams params(1.0, 1.0, static_cast<int>(state.range(1)),
                             static_cast<int>(state.range(1) * 2 / 5), 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracbin::precise::general_table<64>(params, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_GeneralTable)->ArgsProduct({{0, 1}, {50, 100}})->Unit(benchmark::kMillisecond);

// Evaluating a prebuilt table at one time point.
void BM_EvaluateTable(benchmark::State& state) {
  const ProcessParams params(1.0, 3.0, 100, 40, 0.7);
  const auto table = fracbin::precise::general_table<64>(params, Exec::Serial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracbin::precise::evaluate_table(table, 0.7, 2.0, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_EvaluateTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Full pmf evaluation through the public evaluator.
void BM_PmfEvaluator(benchmark::State& state) {
  const ProcessParams params(1.0, 1.0, 50, 20, 0.7);
  for (auto _ : state) {
    const fracbin::analytics::PmfEvaluator eval(params, exec_of(state));
    benchmark::DoNotOptimize(eval(1.0));
  }
  label(state);
}
BENCHMARK(BM_PmfEvaluator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Monte Carlo ensemble of exact fractional paths.
void BM_Ensemble(benchmark::State& state) {
  const ProcessParams params(1.0, 3.0, 100, 40, 0.7);
  const std::vector<double> grid{0.5, 1.0, 2.0, 5.0, 10.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracbin::sampler::ensemble(params, grid, state.range(1),
                                                        fracbin::RngSeed{1}, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  label(state);
}
BENCHMARK(BM_Ensemble)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
