// Serial reference path against the OpenMP executor on the Monte Carlo kernels.
// Argument 0 runs Executor::serial(); k > 0 runs Executor(k).

#include <benchmark/benchmark.h>

#include <vector>

#include "maxstream/models.hpp"
#include "maxstream/parallel.hpp"
#include "maxstream/verify.hpp"

using namespace maxstream;

namespace {

Executor executor_for(const benchmark::State& state) {
  const auto threads = static_cast<int>(state.range(0));
  return threads == 0 ? Executor::serial() : Executor(threads);
}

void thread_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int t = 1; t <= Executor::hardware_threads(); t *= 2) b->Arg(t);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

void BM_MaxLimitArmax(benchmark::State& state) {
  const Executor ex = executor_for(state);
  const auto model = ProcessModel::armax(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(verify_max_limit(model, 10'000, 1000, 0, ex));
}
BENCHMARK(BM_MaxLimitArmax)->Apply(thread_args);

void BM_J1Failure(benchmark::State& state) {
  const Executor ex = executor_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(j1_failure_experiment(0.2, 0.8, 10.0, 1000, 20'000, 0, ex));
}
BENCHMARK(BM_J1Failure)->Apply(thread_args);

void BM_ThetaConditional(benchmark::State& state) {
  const Executor ex = executor_for(state);
  const auto model = ProcessModel::moving_maxima({0.2, 0.3, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_theta_conditional(model, 50, 0.999, 2'000'000, 0, ex));
}
BENCHMARK(BM_ThetaConditional)->Apply(thread_args);

void BM_GarchTheta(benchmark::State& state) {
  const Executor ex = executor_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(garch_extremal_index(0.3, 0.7, 20, 50'000, 0, ex));
}
BENCHMARK(BM_GarchTheta)->Apply(thread_args);

void BM_PoissonCluster(benchmark::State& state) {
  const Executor ex = executor_for(state);
  const auto model = ProcessModel::armax(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_cluster_check(model, 10'000, 1.0, 100, 1000, 0, ex));
}
BENCHMARK(BM_PoissonCluster)->Apply(thread_args);

}  // namespace

BENCHMARK_MAIN();
