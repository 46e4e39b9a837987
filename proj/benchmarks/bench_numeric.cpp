#include "orbitdepth/holonomy.hpp"
#include "orbitdepth/integrate.hpp"
#include "orbitdepth/numeric_checks.hpp"

#include <benchmark/benchmark.h>

using namespace orbitdepth;

static void BM_IteratedIntegral(benchmark::State& state)
{
    const Cycle c = cycle_of_word(v_k(2), 0.36);
    std::vector<OneForm> forms;
    for (int i = 0; i < state.range(0); ++i)
        forms.push_back(OneForm::dphi(2 + i % 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(iterated_integral(c, forms));
}
BENCHMARK(BM_IteratedIntegral)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_HolonomyOval(benchmark::State& state)
{
    const Cycle c = real_oval(0.36);
    const Deformation d = flagship_deformation();
    const double eps = 1e-3 * static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(holonomy(c, eps, d));
}
BENCHMARK(BM_HolonomyOval)->Arg(1)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_FlagshipFit(benchmark::State& state)
{
    const Deformation d = flagship_deformation();
    for (auto _ : state)
        benchmark::DoNotOptimize(melnikov_fit(gamma(), 0.36, default_eps_grid(), d));
}
BENCHMARK(BM_FlagshipFit)->Unit(benchmark::kMillisecond);
