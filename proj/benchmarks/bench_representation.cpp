#include "orbitdepth/representation.hpp"
#include "orbitdepth/word.hpp"

#include <benchmark/benchmark.h>

using namespace orbitdepth;

static void BM_RhoOfV(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const Word v = v_k(k + 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(rho(k, v));
}
BENCHMARK(BM_RhoOfV)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_DepthCertificate(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(depth_certificate(k, 20, 11));
}
BENCHMARK(BM_DepthCertificate)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
