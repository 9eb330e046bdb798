#include <benchmark/benchmark.h>

#include <random>

#include "pioneer/pdm.hpp"
#include "pioneer/simulation.hpp"

using namespace pioneer;

namespace {

EstimatePanel random_panel(std::size_t m, std::size_t periods) {
    std::mt19937_64 g(1);
    std::lognormal_distribution<double> d(0.4, 0.3);
    std::vector<std::vector<double>> rows(m, std::vector<double>(periods));
    for (auto& r : rows)
        for (auto& v : r) v = d(g);
    return EstimatePanel::from_rows(rows);
}

ScenarioConfig scenario() {
    ScenarioConfig cfg;
    cfg.experts = 5;
    cfg.horizon = 12;
    return cfg;
}

void BM_PdmScoresSerial(benchmark::State& state) {
    const auto panel = random_panel(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(pdm_raw_scores_reference(panel, 3, {}));
}

void BM_PdmScoresParallel(benchmark::State& state) {
    const auto panel = random_panel(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(pdm_raw_scores(panel, 3, {}));
}

void BM_MonteCarloSerial(benchmark::State& state) {
    const auto cfg = scenario();
    for (auto _ : state) benchmark::DoNotOptimize(run_monte_carlo_serial(cfg, static_cast<std::size_t>(state.range(0))));
}

void BM_MonteCarloParallel(benchmark::State& state) {
    const auto cfg = scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_monte_carlo(cfg, static_cast<std::size_t>(state.range(0)), {0, false}));
    }
}

}  // namespace

BENCHMARK(BM_PdmScoresSerial)->Arg(16)->Arg(256)->Arg(2048);
BENCHMARK(BM_PdmScoresParallel)->Arg(16)->Arg(256)->Arg(2048);
BENCHMARK(BM_MonteCarloSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
