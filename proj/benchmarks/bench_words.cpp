#include "orbitdepth/magnus.hpp"
#include "orbitdepth/word.hpp"

#include <benchmark/benchmark.h>

using namespace orbitdepth;

static void BM_VarOrbit(benchmark::State& state)
{
    const int i_max = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(var_orbit(i_max));
}
BENCHMARK(BM_VarOrbit)->DenseRange(2, 6);

static void BM_MonodromyOnRandomWords(benchmark::State& state)
{
    RandomWords gen(7);
    std::vector<Word> words;
    for (int i = 0; i < 100; ++i)
        words.push_back(gen.next());
    const Endo m = m_endo();
    for (auto _ : state)
        for (const auto& w : words)
            benchmark::DoNotOptimize(m(w));
}
BENCHMARK(BM_MonodromyOnRandomWords);

static void BM_MagnusDepthOfV(benchmark::State& state)
{
    const Word v = v_k(static_cast<int>(state.range(0)));
    const int degree = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(depth_lower_bound(v, degree));
    state.counters["letters"] = static_cast<double>(v.size());
}
BENCHMARK(BM_MagnusDepthOfV)->ArgsProduct({{2, 3, 4, 5}, {6, 8}})->Unit(benchmark::kMillisecond);
