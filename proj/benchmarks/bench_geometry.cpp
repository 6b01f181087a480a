#include "mnash/manifolds.hpp"
#include "mnash/verification.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mnash;

void BM_SpdExpLog(benchmark::State& state) {
    const auto m = SPDManifold::make(static_cast<std::size_t>(state.range(0)));
    Rng rng = make_rng(1);
    const ManifoldPoint p = random_point(*m, rng);
    const ManifoldPoint q = random_point(*m, rng);
    for (auto _ : state) {
        const TangentVector v = m->log(p, q);
        benchmark::DoNotOptimize(m->exp(p, v));
    }
}
BENCHMARK(BM_SpdExpLog)->Arg(2)->Arg(3)->Arg(5)->Arg(10);

void BM_SpdDistance(benchmark::State& state) {
    const auto m = SPDManifold::make(static_cast<std::size_t>(state.range(0)));
    Rng rng = make_rng(2);
    const ManifoldPoint p = random_point(*m, rng);
    const ManifoldPoint q = random_point(*m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(m->distance(p, q));
}
BENCHMARK(BM_SpdDistance)->Arg(2)->Arg(5)->Arg(10);

void BM_HalfPlaneTransport(benchmark::State& state) {
    const auto m = PoincareHalfPlane::make();
    Rng rng = make_rng(3);
    const ManifoldPoint p = random_point(*m, rng);
    const ManifoldPoint q = random_point(*m, rng);
    const TangentVector v = m->random_unit_tangent(p, rng);
    for (auto _ : state) benchmark::DoNotOptimize(m->transport(p, q, v));
}
BENCHMARK(BM_HalfPlaneTransport);

void BM_SectionalCurvature(benchmark::State& state) {
    const auto m = SPDManifold::make(3);
    Rng rng = make_rng(4);
    const ManifoldPoint p = random_point(*m, rng);
    const TangentVector u = m->random_unit_tangent(p, rng);
    const TangentVector w = m->random_unit_tangent(p, rng);
    for (auto _ : state) benchmark::DoNotOptimize(sectional_curvature_estimate(*m, p, u, w));
}
BENCHMARK(BM_SectionalCurvature);

}  // namespace
