#include <benchmark/benchmark.h>

#include "fracdep/analytic.hpp"
#include "fracdep/specfun.hpp"

using namespace fracdep;

static void BM_IncBeta(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::inc_beta(0.3, 1.3, x));
        x = x < 0.9 ? x + 0.01 : 0.1;
    }
}
BENCHMARK(BM_IncBeta);

static void BM_LogGammaRatio(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(specfun::log_gamma_ratio(1e5, 0.7));
}
BENCHMARK(BM_LogGammaRatio);

static void BM_FpnCorrelation(benchmark::State& state) {
    const FpnParams n{{0.3, 1.0}, 1.0};
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(analytic::fpn_correlation(n, 1.0, t));
}
BENCHMARK(BM_FpnCorrelation)->Arg(100)->Arg(1000000);

static void BM_FnbpCovariance(benchmark::State& state) {
    const FnbpParams p{{0.5, 1.0}, {1.0, 1.0}};
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(analytic::fnbp_covariance(p, 1.0, t));
}
BENCHMARK(BM_FnbpCovariance)->Arg(10)->Arg(100000);

static void BM_DeltaStatistic(benchmark::State& state) {
    const FppParams p{0.5, 1.0};
    const auto m = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(analytic::delta_statistic(p, 2, m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DeltaStatistic)->RangeMultiplier(10)->Range(10, 100000)->Complexity(benchmark::oN);
