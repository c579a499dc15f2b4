// Serial reference vs OpenMP run grid on the default consistent benchmark.

#include <benchmark/benchmark.h>

#include "fixopt/experiment.hpp"

namespace {

fixopt::RunConfig bench_config(std::size_t iterations) {
  fixopt::RunConfig cfg;
  cfg.dim = 2;
  cfg.factors = 5;
  cfg.balls_per_factor = 5;
  cfg.iterations = iterations;
  cfg.samplings = 10;
  cfg.master_seed = 7;
  cfg.algorithms = fixopt::presets();
  return cfg;
}

void BM_GridSerial(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto result = fixopt::run_experiment(cfg, fixopt::Execution::serial);
    benchmark::DoNotOptimize(result.aggregate.data());
  }
}

void BM_GridParallel(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto result = fixopt::run_experiment(cfg, fixopt::Execution::parallel);
    benchmark::DoNotOptimize(result.aggregate.data());
  }
}

void BM_SingleStep(benchmark::State& state) {
  auto cfg = bench_config(1);
  cfg.dim = static_cast<int>(state.range(0));
  const auto problem = fixopt::make_sampling_problem(cfg, 0);
  const auto algorithm = fixopt::resolve_preset("CAD1");
  for (auto _ : state) {
    auto record = fixopt::run_single(cfg, algorithm, problem);
    benchmark::DoNotOptimize(record.final_digest);
  }
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingleStep)->Arg(2)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
