#include "mnash/registry.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mnash;

void BM_StampacchiaCheckLens(benchmark::State& state) {
    const RegisteredGame rg = build_registered_game("6.1");
    const ManifoldPoint p = rg.game->manifold().point({0.0, 2.0, 1.0});
    for (auto _ : state) benchmark::DoNotOptimize(is_nash_stampacchia(*rg.game, p));
}
BENCHMARK(BM_StampacchiaCheckLens);

void BM_ClarkeCheckDetBand(benchmark::State& state) {
    const RegisteredGame rg = build_registered_game("6.2", "d3");
    for (auto _ : state) benchmark::DoNotOptimize(is_nash_clarke(*rg.game, *rg.reference));
}
BENCHMARK(BM_ClarkeCheckDetBand);

void BM_DiscreteDynamics(benchmark::State& state) {
    const RegisteredGame rg = build_registered_game("6.4");
    const ManifoldPoint start = rg.game->manifold().point({3.0, 2.0, 0.5, 0.5, -1.0});
    for (auto _ : state) benchmark::DoNotOptimize(solve_dds(*rg.game, rg.solver, start, rg.reference));
}
BENCHMARK(BM_DiscreteDynamics);

void BM_ContractionProbe(benchmark::State& state) {
    const RegisteredGame rg = build_registered_game("6.4");
    for (auto _ : state)
        benchmark::DoNotOptimize(contraction_probe(*rg.game, rg.constants->alpha, rg.constants->rho, 100, 1));
}
BENCHMARK(BM_ContractionProbe);

}  // namespace

BENCHMARK_MAIN();
