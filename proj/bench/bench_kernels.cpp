// Serial reference vs fast / parallel kernels.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "comb/estimator.hpp"
#include "comb/rng.hpp"
#include "comb/simulator.hpp"
#include "comb/walk1d.hpp"

using namespace comb;

namespace {

void BM_WalkReference(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t k = 0;
  for (auto _ : state) {
    BitStream bits(replicate_seed(1, k++));
    benchmark::DoNotOptimize(reference::run_walk(StopRule::after_steps(n), bits));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_WalkFast(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t k = 0;
  for (auto _ : state) {
    BitStream bits(replicate_seed(1, k++));
    benchmark::DoNotOptimize(run_walk(StopRule::after_steps(n), bits));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_RangeSeriesReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(walk1d::reference::expected_range_series(state.range(0)));
}

void BM_RangeSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(walk1d::expected_range_series(state.range(0)));
}

ExperimentConfig experiment(int threads) {
  ExperimentConfig cfg;
  cfg.master_seed = 3;
  cfg.replicates = 2000;
  cfg.rule = StopRule::after_steps(10000);
  cfg.threads = threads;
  return cfg;
}

void BM_ExperimentReference(benchmark::State& state) {
  const auto cfg = experiment(1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::run_experiment(cfg, Statistic::VisitedSites));
}

// range(0) == 0 means all available threads
void BM_Experiment(benchmark::State& state) {
  const auto cfg = experiment(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, Statistic::VisitedSites));
}

}  // namespace

BENCHMARK(BM_WalkReference)->Arg(1000)->Arg(100000);
BENCHMARK(BM_WalkFast)->Arg(1000)->Arg(100000)->Arg(10000000);
BENCHMARK(BM_RangeSeriesReference)->Arg(200)->Arg(500);
BENCHMARK(BM_RangeSeries)->Arg(200)->Arg(500)->Arg(2000);
BENCHMARK(BM_ExperimentReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Experiment)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
