#include <benchmark/benchmark.h>

#include "chemflow/scenario.hpp"
#include "chemflow/solver.hpp"

using namespace chemflow;

namespace {
GridSpec grid2d(int n) {
    GridSpec g;
    g.dim = 2;
    g.points_per_axis = n;
    return g;
}
}  // namespace

static void BM_TransformRoundTrip(benchmark::State& state) {
    const GridSpec g = grid2d(static_cast<int>(state.range(0)));
    ScalarField f = random_band_limited(g, 1, g.dealias_limit());
    for (auto _ : state) {
        ScalarField r = transform_roundtrip(f);
        benchmark::DoNotOptimize(r.values().data());
    }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(64)->Arg(128)->Arg(256);

static void BM_DealiasedProduct(benchmark::State& state) {
    const GridSpec g = grid2d(static_cast<int>(state.range(0)));
    ScalarField a = random_band_limited(g, 2, g.dealias_limit());
    ScalarField b = random_band_limited(g, 3, g.dealias_limit());
    for (auto _ : state) {
        ScalarField p = dealiased_product(a, b);
        benchmark::DoNotOptimize(p.values().data());
    }
}
BENCHMARK(BM_DealiasedProduct)->Arg(64)->Arg(128)->Arg(256);

static void BM_FullTendency(benchmark::State& state) {
    const GridSpec g = grid2d(static_cast<int>(state.range(0)));
    ScenarioInstance inst = find_scenario("gaussian_drop").make(g);
    for (auto _ : state) {
        Tendency t = rhs_full(inst.initial, inst.model, inst.potential);
        benchmark::DoNotOptimize(t.dn.values().data());
    }
}
BENCHMARK(BM_FullTendency)->Arg(64)->Arg(128);

static void BM_TimeStep(benchmark::State& state) {
    const GridSpec g = grid2d(static_cast<int>(state.range(0)));
    ScenarioInstance inst = find_scenario("gaussian_drop").make(g);
    StagedRhs rhs = full_rhs(inst.model, inst.potential);
    for (auto _ : state) {
        State s = imex_step(inst.initial, 1e-3, rhs);
        benchmark::DoNotOptimize(s.n.values().data());
    }
}
BENCHMARK(BM_TimeStep)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
