// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... and
// OMP_NUM_THREADS / ABC_ARMA_THREADS to vary the team size.

#include <benchmark/benchmark.h>

#include "abc_arma/abc.hpp"
#include "abc_arma/kernels.hpp"
#include "abc_arma/model.hpp"
#include "abc_arma/stats.hpp"

namespace {

using namespace abc_arma;

const ArmaParams kModel{{0.6, 0.2}, {0.3, 0.4}, 2.0};

void BM_AcfSerial(benchmark::State& state) {
    const Series y = simulate_arma(kModel, 1'000'000, 7);
    const auto lags = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_acf(y, lags));
}

void BM_AcfParallel(benchmark::State& state) {
    const Series y = simulate_arma(kModel, 1'000'000, 7);
    const auto lags = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_acf_parallel(y.view(), lags, kernels::default_threads()));
}

AbcConfig phi_config(std::size_t proposals) {
    AbcConfig c;
    c.n_proposals = proposals;
    c.epsilon = 1.0;
    c.top_k = 50;
    c.master_seed = 3;
    return c;
}

void BM_PhiStageSerial(benchmark::State& state) {
    const Series y = simulate_arma(kModel, 1000, 11);
    const AbcConfig c = phi_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_phi(y, 2, 2, c, {0, true}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PhiStageParallel(benchmark::State& state) {
    const Series y = simulate_arma(kModel, 1000, 11);
    const AbcConfig c = phi_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_phi(y, 2, 2, c, {kernels::default_threads(), false}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_AcfSerial)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AcfParallel)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhiStageSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhiStageParallel)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
