#include "doctest.h"

#include "mnash/equilibria.hpp"
#include "mnash/errors.hpp"
#include "mnash/registry.hpp"
#include "oracles/oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace mnash;

namespace {

ManifoldPoint lens(const Game& g, double x1, double x2, double y) { return g.manifold().point({x1, x2, y}); }

ManifoldPoint trace_halfspace_equilibrium(const Game& g) {
    return g.manifold().point({oracle::kEquilibriumT, oracle::kEquilibriumDiag, 0.0, 0.0, oracle::kEquilibriumDiag});
}

std::vector<ManifoldPoint> random_starts(const Game& g, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<ManifoldPoint> out;
    for (std::size_t k = 0; k < count; ++k) {
        const double off = u(rng);
        out.push_back(g.manifold().point({u(rng), u(rng), off, off, u(rng)}));
    }
    return out;
}

}  // namespace

TEST_SUITE("equilibria") {
    TEST_CASE("max-min over the simplex") {
        linalg::Matrix one(3, 1);
        one << 2, -1, 4;
        CHECK(max_min_mixture(one).value == -1.0);

        std::mt19937_64 rng(7);
        std::normal_distribution<double> g;
        for (int cols : {2, 3}) {
            for (int k = 0; k < 30; ++k) {
                linalg::Matrix a(6, cols);
                for (int i = 0; i < a.rows(); ++i)
                    for (int j = 0; j < cols; ++j) a(i, j) = g(rng);
                const auto r = max_min_mixture(a);
                REQUIRE(r.weights.size() == static_cast<std::size_t>(cols));
                double sum = 0.0;
                for (double w : r.weights) {
                    CHECK(w >= -1e-12);
                    sum += w;
                }
                CHECK(std::abs(sum - 1.0) < 1e-12);
                const Eigen::Map<const Eigen::VectorXd> w(r.weights.data(), cols);
                CHECK(std::abs((a * w).minCoeff() - r.value) < 1e-9);
                const double grid = oracle::max_min_grid(a, cols == 2 ? 20000 : 400);
                CHECK(r.value >= grid - 1e-9);
                CHECK(r.value <= grid + 2e-2);
            }
        }
    }

    TEST_CASE("Nash equilibrium checker on the half-plane game") {
        const auto rg = build_registered_game("6.1");
        const Game& g = *rg.game;
        CHECK(is_nash_equilibrium(g, lens(g, 0.2, 1.9, 0.0)).pass);
        const auto bad = is_nash_equilibrium(g, lens(g, 0.0, 2.0, 1.0));
        CHECK_FALSE(bad.pass);
        CHECK(bad.players[1].worst <= -1.99);
        CHECK(bad.players[1].worst >= -2.0 - 1e-12);
        REQUIRE(bad.players[1].witness);
        CHECK(std::abs(bad.players[1].witness->coords[0]) < 1e-2);
    }

    TEST_CASE("Stampacchia checker certifies with the zero element of the kink hull") {
        const auto rg = build_registered_game("6.1");
        const Game& g = *rg.game;
        const auto& k1 = g.strategy_set(0);
        for (const auto& x : k1.sample(10, 3)) {
            const auto p = lens(g, x.coords[0], x.coords[1], 0.0);
            const auto ns = is_nash_stampacchia(g, p);
            CHECK(ns.pass);
            const auto hull = g.subdiff(1, p);
            const auto xi = hull.combination(ns.players[1].certificate);
            CHECK(std::abs(xi.components[0]) < 1e-8);
        }
        CHECK(is_nash_stampacchia(g, lens(g, 0.0, 2.0, 1.0)).pass);
        CHECK(is_nash_stampacchia(g, lens(g, 0.0, 2.0, -1.0)).pass);
        CHECK_FALSE(is_nash_stampacchia(g, lens(g, 0.2, 1.9, 0.5)).pass);
        CHECK(is_nash_clarke(g, lens(g, 0.0, 2.0, 1.0)).pass);
        CHECK_FALSE(is_nash_clarke(g, lens(g, 0.2, 1.9, 0.5)).pass);
    }

    TEST_CASE("det-band game with strictly monotone coefficients") {
        const auto rg = build_registered_game("6.2", "d3");
        REQUIRE(rg.reference);
        CHECK(is_nash_equilibrium(*rg.game, *rg.reference).pass);
        CHECK(is_nash_stampacchia(*rg.game, *rg.reference).pass);
        CHECK(is_nash_clarke(*rg.game, *rg.reference).pass);
    }

    TEST_CASE("subdifferential of the trace-inverse game") {
        const double g = 1.0, h = -1.0;
        const auto game = trace_inverse_game(2, g, h);
        const auto& m = game->manifold();
        const auto p = m.point({0.7, 1.3, 0.2, 0.2, 0.9});
        const linalg::Matrix x = oracle::from_flat({1.3, 0.2, 0.2, 0.9}, 2);
        const double t = 0.7;
        const auto d1 = game->subdiff(0, p);
        REQUIRE(d1.is_singleton());
        CHECK(d1.generators()[0].components[0] ==
              doctest::Approx(3 * t * t * x.determinant() - x.inverse().trace()).epsilon(1e-12));
        const auto d2 = game->subdiff(1, p);
        const auto& spd = game->factor(1);
        const auto log_to_i = spd.log(game->component(p, 1), spd.point({1, 0, 0, 1}));
        for (std::size_t k = 0; k < 4; ++k) {
            const double expect = -2 * g * log_to_i.components[k] - h * (k == 0 || k == 3 ? 1.0 : 0.0);
            CHECK(std::abs(d2.generators()[0].components[k] - expect) < 1e-12);
        }
    }

    TEST_CASE("fixed-point map") {
        const auto rg = build_registered_game("6.4");
        const auto ref = trace_halfspace_equilibrium(*rg.game);
        const auto img = fixed_point_map(*rg.game, oracle::kAlpha, ref);
        CHECK(rg.game->manifold().distance(img, ref) <= 1e-8);

        const auto zero = build_registered_game("zero");
        for (const auto& p : zero.game->set().sample(10, 1))
            CHECK(same_point(fixed_point_map(*zero.game, 0.3, p), zero.game->set().project(p)));

        const auto lensg = build_registered_game("6.1");
        for (const auto& c : curated_candidates(lensg)) {
            const bool small = fixed_point_residual(*lensg.game, 0.1, c.point).residual <= 1e-8;
            const bool large = fixed_point_residual(*lensg.game, 1.0, c.point).residual <= 1e-8;
            CHECK(small == large);
        }
        const auto r = fixed_point_residual(*lensg.game, 0.1, lens(*lensg.game, 0.0, 2.0, 1.0));
        CHECK(r.residual <= 1e-10);
        CHECK(r.per_player.size() == 2);
    }

    TEST_CASE("trace-half-space constants") {
        const auto k = lipschitz_monotone_constants(2, 2, 0.1, 2, 0.1, 2);
        CHECK(std::abs(k.lipschitz - oracle::kLipschitz) < 1e-14);
        CHECK(std::abs(k.kappa - oracle::kKappa) < 1e-14);
        CHECK(std::abs(k.alpha - oracle::kAlpha) < 1e-14);
        CHECK(std::abs(k.rho - oracle::kRho) < 1e-14);
        CHECK(k.kappa <= k.lipschitz);

        const auto limit = lipschitz_monotone_constants(3, 3, 0.0, 2, 1e-12, 2);
        CHECK(limit.kappa == doctest::Approx(1.0).epsilon(1e-11));
        const auto soft = lipschitz_monotone_constants(0.5, 0.5, 0.0, 2, 1e-12, 2);
        CHECK(soft.kappa == doctest::Approx(0.5).epsilon(1e-11));

        CHECK_THROWS_AS(lipschitz_monotone_constants(2, 2, 1.0, 2, 2.0, 2), DomainError);
        CHECK_THROWS_AS(lipschitz_monotone_constants(0.1, 0.1, 0.1, 2, 0.1, 2), DomainError);
        CHECK_THROWS_AS(lipschitz_monotone_constants(2, 1, 0.1, 2, 0.1, 2), DomainError);
    }

    TEST_CASE("solver configuration validation") {
        SolverConfig c;
        CHECK_NOTHROW(c.validate());
        c.alpha = 0.0;
        CHECK_THROWS_AS(c.validate(), InputError);
        c = SolverConfig{};
        c.rho = 1.0;
        CHECK_THROWS_AS(c.validate(), InputError);
        c = SolverConfig{};
        c.h = -0.1;
        CHECK_THROWS_AS(c.validate(), InputError);
    }

    TEST_CASE("discrete dynamics from many starts") {
        const auto rg = build_registered_game("6.4");
        const Game& g = *rg.game;
        const auto ref = trace_halfspace_equilibrium(g);
        REQUIRE(rg.reference);
        CHECK(g.manifold().distance(*rg.reference, ref) <= 1e-10);

        std::vector<ManifoldPoint> finals;
        for (const auto& p0 : random_starts(g, 10, 1)) {
            const auto rep = solve_dds(g, rg.solver, p0, ref);
            CHECK(rep.status == SolverStatus::Converged);
            CHECK(rep.bound_fraction() == 1.0);
            CHECK(rep.certificate_pass);
            for (std::size_t k = 1; k < rep.iterates.size(); ++k) CHECK(g.set().contains(rep.iterates[k]));
            CHECK(rep.trace.size() == rep.iterates.size());
            finals.push_back(rep.final_point);
        }
        double spread = 0.0;
        for (const auto& a : finals)
            for (const auto& b : finals) spread = std::max(spread, g.manifold().distance(a, b));
        CHECK(spread <= 1e-6);

        const auto still = solve_dds(g, rg.solver, ref, ref);
        CHECK(still.status == SolverStatus::Converged);
        CHECK(still.steps == 1);
        CHECK(still.trace.back().residual <= 1e-14);
    }

    TEST_CASE("continuous dynamics") {
        const auto rg = build_registered_game("6.4");
        const Game& g = *rg.game;
        const auto ref = trace_halfspace_equilibrium(g);
        const auto p0 = g.manifold().point({2.0, 1.5, 0.3, 0.3, 0.2});
        REQUIRE(g.set().contains(p0));
        const auto cds = solve_cds(g, rg.solver, p0, ref);
        CHECK(cds.status == SolverStatus::Converged);
        CHECK(cds.viability == 1.0);
        CHECK(cds.bound_fraction() == 1.0);
        CHECK(g.manifold().distance(cds.final_point, ref) <= 1e-6);
        for (std::size_t k = 1; k < cds.trace.size(); ++k) CHECK(cds.trace[k].k_or_t > cds.trace[k - 1].k_or_t);

        const auto rest = solve_cds(g, rg.solver, ref, ref);
        CHECK(g.manifold().distance(rest.final_point, ref) <= 1e-12);

        SolverConfig c = rg.solver;
        c.t_end = 5.0;
        c.tol = 0.0;
        std::vector<ManifoldPoint> ends;
        for (double h : {0.04, 0.02, 0.01}) {
            c.h = h;
            ends.push_back(solve_cds(g, c, p0).final_point);
        }
        const double coarse = g.manifold().distance(ends[0], ends[1]);
        const double fine = g.manifold().distance(ends[1], ends[2]);
        CHECK(fine < coarse);
        CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.25));
    }

    TEST_CASE("contraction probe") {
        const auto rg = build_registered_game("6.4");
        const auto ok = contraction_probe(*rg.game, oracle::kAlpha, oracle::kRho, 300, 1);
        CHECK(ok.verdict == Verdict::SupportsHypothesis);
        CHECK_FALSE(ok.witness);
        CHECK(ok.worst <= 1.0 - oracle::kRho + 1e-9);
        const auto tight = contraction_probe(*rg.game, oracle::kAlpha, 0.999, 300, 1);
        CHECK(tight.verdict == Verdict::Violated);
        CHECK(tight.witness);

        const auto zero = build_registered_game("zero");
        for (double a : {0.01, 1.0}) {
            const auto r = contraction_probe(*zero.game, a, 0.05, 100, 2);
            CHECK(r.verdict == Verdict::Violated);
            CHECK(r.worst == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("coercivity probe") {
        const auto decay = build_registered_game("decay");
        const auto d = coercivity_probe(*decay.game, decay.probe_origin);
        CHECK(d.verdict == Verdict::Violated);
        CHECK(d.threshold == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
        CHECK(d.worst == doctest::Approx(-1.0).epsilon(0.05));
        CHECK(d.witness);

        const auto zero = build_registered_game("zero");
        const auto z = coercivity_probe(*zero.game, zero.probe_origin);
        CHECK(z.verdict == Verdict::Violated);
        CHECK(z.worst == 0.0);

        const auto ti = build_registered_game("6.3", "a");
        const auto c = coercivity_probe(*ti.game, ti.probe_origin);
        CHECK(c.verdict == Verdict::SupportsHypothesis);
        REQUIRE(c.trend.size() == 4);
        for (std::size_t k = 1; k < c.trend.size(); ++k) CHECK(c.trend[k] < c.trend[k - 1]);
        CHECK_FALSE(c.witness);
    }
}
