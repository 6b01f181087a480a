#include "mnash/convex_sets.hpp"
#include "mnash/verification.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mnash;

template <class Set>
void project_outside(benchmark::State& state, const Set& set) {
    const auto outside = set.sample_ambient(64, 5);
    std::size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(set.project(outside[k++ % outside.size()]));
}

void BM_ProjectDetBand(benchmark::State& state) {
    const DetBandBall set(SPDManifold::make(static_cast<std::size_t>(state.range(0))));
    project_outside(state, set);
}
BENCHMARK(BM_ProjectDetBand)->Arg(2)->Arg(3);

void BM_ProjectTraceInverse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const TraceInvSublevel set(SPDManifold::make(n), static_cast<double>(n));
    project_outside(state, set);
}
BENCHMARK(BM_ProjectTraceInverse)->Arg(2)->Arg(5);

void BM_ProjectHalfPlaneTriangle(benchmark::State& state) {
    const HalfPlaneAnnulus set(PoincareHalfPlane::make());
    project_outside(state, set);
}
BENCHMARK(BM_ProjectHalfPlaneTriangle);

void BM_NonexpansivenessCheck(benchmark::State& state) {
    const TraceInvSublevel set(SPDManifold::make(2), 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(nonexpansiveness_check(set, 100, 9));
}
BENCHMARK(BM_NonexpansivenessCheck);

}  // namespace
