#include <benchmark/benchmark.h>

#include "qcd/analytic_roc.hpp"
#include "qcd/cusum.hpp"
#include "qcd/monte_carlo.hpp"
#include "qcd/specfun.hpp"

namespace {

const qcd::SignalModel kModel(1.0, 1.0);

qcd::RocQuery grid_query() {
  return {kModel, 200, 100, 140, qcd::SensingCase::Entrance};
}

void BM_RegLowerGamma(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0)) / 2.0;
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcd::specfun::reg_lower_gamma({a, x}));
    x = x > 300.0 ? 0.1 : x * 1.07;
  }
}
BENCHMARK(BM_RegLowerGamma)->Arg(1)->Arg(20)->Arg(200);

void BM_CusumRun(benchmark::State& state) {
  const auto samples = qcd::generate({kModel, qcd::SensingCase::Entrance,
                                      static_cast<std::size_t>(state.range(0)), 1, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcd::run(samples, kModel, qcd::SensingCase::Entrance, 8.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CusumRun)->Arg(200)->Arg(4000);

void BM_AnalyticSweep(benchmark::State& state) {
  const auto grid = qcd::default_thresholds();
  const auto q = grid_query();
  for (auto _ : state) benchmark::DoNotOptimize(qcd::roc_sweep(q, grid));
}
BENCHMARK(BM_AnalyticSweep);

void BM_EmpiricalRoc(benchmark::State& state) {
  const auto grid = qcd::default_thresholds();
  const auto q = grid_query();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qcd::empirical_roc(q, grid, static_cast<std::size_t>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalRoc)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SolveThreshold(benchmark::State& state) {
  const auto q = grid_query();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcd::solve_threshold(q, 0.1, qcd::Metric::FalseAlarm));
  }
}
BENCHMARK(BM_SolveThreshold)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
