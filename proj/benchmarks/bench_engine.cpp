#include <benchmark/benchmark.h>

#include "ramasum/laplace.hpp"
#include "ramasum/ramanujan.hpp"

using namespace ramasum;

static void BM_EulerMaclaurinGamma(benchmark::State& state) {
    PrecisionContext ctx(state.range(0), -20);
    EulerMaclaurinConfig cfg;
    SeriesExpr f = parse("1/n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_via_euler_maclaurin(f, std::nullopt, cfg, ctx));
    }
}
BENCHMARK(BM_EulerMaclaurinGamma)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_EulerMaclaurinHarmonicExp(benchmark::State& state) {
    PrecisionContext ctx(256, -20);
    EulerMaclaurinConfig cfg;
    SeriesExpr f = parse("H(n)*exp(-n*z)");
    std::optional<BigReal> z = BigReal::from_string("0.5", ctx);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_via_euler_maclaurin(f, z, cfg, ctx));
    }
}
BENCHMARK(BM_EulerMaclaurinHarmonicExp)->Unit(benchmark::kMillisecond);

static void BM_CatalogLemma2(benchmark::State& state) {
    PrecisionContext ctx(256, -20);
    BigReal z = BigReal::from_string("0.5", ctx);
    for (auto _ : state) {
        benchmark::DoNotOptimize(catalog_sum(CatalogKey::exp_harmonic(z), ctx));
    }
}
BENCHMARK(BM_CatalogLemma2)->Unit(benchmark::kMillisecond);

static void BM_LaplacePsi(benchmark::State& state) {
    PrecisionContext ctx(256, -20);
    BigReal z = BigReal::from_long(1, ctx);
    for (auto _ : state) {
        benchmark::DoNotOptimize(laplace_psi1p(z, ctx));
    }
}
BENCHMARK(BM_LaplacePsi)->Unit(benchmark::kMillisecond);

static void BM_TaylorStrategy(benchmark::State& state) {
    PrecisionContext ctx(256, -20);
    SeriesExpr f = parse("exp(n*z)*log(n)");
    std::optional<BigReal> z = BigReal::from_string("0.5", ctx);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_via_taylor_coefficients(f, z, 0, ctx));
    }
}
BENCHMARK(BM_TaylorStrategy)->Unit(benchmark::kMillisecond);

static void BM_ParseDifferentiate16(benchmark::State& state) {
    SeriesExpr f = parse("H(n)*exp(-n*z)");
    for (auto _ : state) {
        SeriesExpr d = f;
        for (int i = 0; i < 16; ++i) d = differentiate(d);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_ParseDifferentiate16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
