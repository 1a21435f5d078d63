#include <benchmark/benchmark.h>

#include "fracdep/rng.hpp"
#include "fracdep/sim.hpp"

using namespace fracdep;

static void BM_PositiveStable(benchmark::State& state) {
    rng::Engine eng = rng::make_engine({1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(sim::sample_positive_stable(0.5, eng));
}
BENCHMARK(BM_PositiveStable);

static void BM_GammaPath(benchmark::State& state) {
    rng::Engine eng = rng::make_engine({2, 0});
    const std::vector<double> grid{1.0, 5.0, 10.0};
    for (auto _ : state) benchmark::DoNotOptimize(sim::sample_gamma_path({1.0, 1.0}, grid, eng));
}
BENCHMARK(BM_GammaPath);

static void BM_FppPath(benchmark::State& state) {
    const sim::PathSpec spec{sim::ProcessKind::Fpp, {0.5, 1.0, 1.0, 1.0}, {1.0, 5.0, 10.0}};
    std::uint64_t r = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sim::sample_process_path(spec, {3, r++}));
}
BENCHMARK(BM_FppPath)->Unit(benchmark::kMicrosecond);
