#include "doctest.h"

#include "mnash/errors.hpp"
#include "mnash/registry.hpp"
#include "mnash/verification.hpp"
#include "oracles/oracles.hpp"

#include <cmath>
#include <random>

using namespace mnash;

TEST_SUITE("verification") {
    TEST_CASE("battery passes on a curved space and catches the non-convex control") {
        BatteryOptions opt;
        opt.pairs = 200;
        opt.obtuse_points = 5;
        opt.directions = 40;
        opt.convexity_pairs = 20;
        opt.curvature_planes = 5;

        const auto hp = hadamard_battery("halfplane", opt);
        CHECK(hp.pattern_ok);
        CHECK(hp.curvature.pass);
        CHECK(hp.curvature.min >= -1.05);
        CHECK(hp.curvature.max <= -0.95);
        for (const auto& s : hp.sets) {
            CAPTURE(s.label);
            CHECK(s.obtuse.pass);
            CHECK(s.nonexpansive.max_ratio <= 1.0 + 1e-9);
            CHECK(s.convexity.pass);
        }

        const auto neg = hadamard_battery("detband-euclidean", opt);
        CHECK(neg.pattern_ok);
        bool control_failed = false;
        for (const auto& s : neg.sets)
            if (!s.expect_convex) {
                control_failed = !s.convexity.pass;
                CHECK_FALSE(s.projection_applicable);
            }
        CHECK(control_failed);
        CHECK_THROWS_AS(hadamard_battery("klein-bottle", opt), InputError);
        CHECK(battery_keys().size() == 8);
    }

    TEST_CASE("a battery whose control passes is reported as broken") {
        auto sym = EuclideanSpace::symmetric_matrices(2);
        BatteryOptions opt;
        opt.pairs = 50;
        opt.obtuse_points = 3;
        opt.directions = 20;
        opt.convexity_pairs = 10;
        opt.curvature_planes = 3;
        const auto r = hadamard_battery("mislabelled", sym, {{"half-space", std::make_shared<TraceHalfSpace>(sym, 1.0), false}},
                                        CurvatureExpectation::Flat, opt);
        CHECK_FALSE(r.pattern_ok);
    }

    TEST_CASE("projection onto a geodesic recovers the foot of the orthogonal geodesic") {
        const std::vector<double> grid{1e-2, 1e-3};
        auto euc = EuclideanSpace::vectors(2);
        const auto p0 = euc->point({0.3, -0.2});
        const auto e = levicivita_projection_experiment(*euc, p0, euc->tangent(p0, {1, 0.5}), euc->tangent(p0, {0, 1}),
                                                        grid, grid);
        CHECK(e.pass);
        for (const auto& s : e.samples) CHECK(std::abs(s.far_side - s.base_side) < 1e-12);

        auto hp = PoincareHalfPlane::make();
        const auto p1 = hp->point({0.1, 1.2});
        const auto h = levicivita_projection_experiment(*hp, p1, hp->tangent(p1, {0.8, 0.3}), hp->tangent(p1, {0.1, 1}),
                                                        grid, grid);
        CHECK(h.pass);
        CHECK(h.max_point_error <= 1e-6);
        for (const auto& s : h.samples) CHECK(s.far_side > s.base_side);

        auto spd = SPDManifold::make(2);
        const auto x = spd->point({2, 0.3, 0.3, 1});
        const auto s = levicivita_projection_experiment(*spd, x, spd->tangent(x, {1, 0.2, 0.2, -0.5}),
                                                        spd->tangent(x, {0.1, 1, 1, 0.4}), grid, grid);
        CHECK(s.pass);
        CHECK(s.samples.size() == 4);
    }

    TEST_CASE("inclusion pattern on the half-plane game") {
        const auto rg = build_registered_game("6.1");
        const auto r = equilibrium_set_crosscheck(*rg.game, curated_candidates(rg), rg.full_equality);
        CHECK(r.pattern_ok);
        CHECK(r.expectation_ok);
        std::size_t ns_only = 0;
        for (const auto& c : r.candidates) {
            if (c.ne) CHECK(c.ns);
            CHECK(c.ns == c.nc);
            if (c.ns && !c.ne) ++ns_only;
        }
        CHECK(ns_only == 2);
    }

    TEST_CASE("zero-coefficient det-band game keeps exactly the unit-determinant points") {
        const auto rg = build_registered_game("6.2", "d2");
        const auto& m = rg.game->manifold();
        CheckOptions opt;
        for (double a : {1.0, 1.2, 1.5}) {
            const auto unit = m.point({1, a, 0, 0, 1 / a});
            CHECK(is_nash_stampacchia(*rg.game, unit, opt).pass);
            CHECK(is_nash_equilibrium(*rg.game, unit, opt).pass);
        }
        const auto off = m.point({1, 1.5, 0, 0, 1});
        CHECK_FALSE(is_nash_stampacchia(*rg.game, off, opt).pass);
        CHECK_FALSE(is_nash_equilibrium(*rg.game, off, opt).pass);
        const auto cr = equilibrium_set_crosscheck(*rg.game, curated_candidates(rg), true, opt);
        CHECK(cr.pattern_ok);
        CHECK(cr.expectation_ok);
    }

    TEST_CASE("trace-half-space game accepts only its equilibrium") {
        const auto rg = build_registered_game("6.4");
        const auto r = equilibrium_set_crosscheck(*rg.game, curated_candidates(rg), rg.full_equality);
        CHECK(r.pattern_ok);
        CHECK(r.expectation_ok);
        for (const auto& c : r.candidates) {
            const bool is_ref = rg.game->manifold().distance(c.point, *rg.reference) < 1e-9;
            CHECK(c.ns == is_ref);
        }
    }

    TEST_CASE("fixed-point residual agrees with the variational checker") {
        const auto rg = build_registered_game("6.1");
        std::vector<ManifoldPoint> profiles;
        for (const auto& c : curated_candidates(rg)) profiles.push_back(c.point);
        for (const auto& p : rg.game->set().sample(20, 4)) profiles.push_back(p);
        const auto a = fixed_point_agreement(*rg.game, 0.1, profiles);
        CHECK(a.pass);
        CHECK(a.profiles == profiles.size());
        CHECK(a.disagree == 0);
    }

    TEST_CASE("Newton inequality on random symmetric matrices") {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g;
        std::uniform_int_distribution<int> dim(2, 6);
        for (int k = 0; k < 1000; ++k) {
            const int n = dim(rng);
            linalg::Matrix y(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) y(i, j) = g(rng);
            y = (y + y.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<linalg::Matrix> es(y);
            const auto l = es.eigenvalues();
            double s2 = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) s2 += l(i) * l(j);
            const double tr = l.sum();
            const double expect = (n - 1.0) / (2.0 * n) * tr * tr - s2;
            const double gap = newton_inequality_gap(y);
            CHECK(gap >= -1e-10 * y.squaredNorm());
            CHECK(std::abs(gap - expect) <= 1e-10 * std::max(1.0, y.squaredNorm()));
        }
        CHECK(std::abs(newton_inequality_gap(linalg::Matrix::Identity(3, 3))) < 1e-14);
    }
}

TEST_SUITE("registry") {
    TEST_CASE("keys, variants and parameter validation") {
        CHECK(registry_keys() == std::vector<std::string>{"6.1", "6.2", "6.3", "6.4", "decay", "zero"});
        CHECK(registry_variants("6.2") == std::vector<std::string>{"d1", "d2", "d3"});
        CHECK(build_registered_game("6.2").variant == "d3");
        CHECK_THROWS_AS(build_registered_game("7.1"), ConfigError);
        CHECK_THROWS_AS(build_registered_game("6.2", "d9"), ConfigError);
        CHECK_THROWS_AS(build_registered_game("6.4", "", {{"bogus", 1.0}}), ConfigError);
        CHECK_THROWS_AS(det_band_game(2, 1.0, 1.0), DomainError);
        CHECK_THROWS_AS(build_registered_game("6.4", "", {{"Lh", 3.0}}), DomainError);
    }

    TEST_CASE("bisection root agrees with the Lambert W closed form") {
        const double t = trace_inverse_root(2, 1.0, 1.0);
        CHECK(std::abs(t - oracle::trace_inverse_root(2, 0.5)) < 1e-12);
        CHECK(std::abs(t - oracle::kRootT) < 1e-12);
        for (std::size_t n : {2u, 3u, 5u})
            for (double h : {0.1, 1.0, 4.0}) CHECK(std::abs(trace_inverse_root(n, 1.3, h) - oracle::trace_inverse_root(n, h / 2.6)) < 1e-12);

        const auto rg = build_registered_game("6.3", "b");
        REQUIRE(rg.reference);
        CHECK(std::abs(rg.reference->coords[0] - oracle::kRootT) < 1e-12);
        CHECK(std::abs(rg.reference->coords[1] - oracle::kRootJ) < 1e-12);
        CHECK(std::abs(oracle::kRootJ * std::log(oracle::kRootJ) - 0.5) < 1e-15);
    }

    TEST_CASE("half-plane payoff gradients") {
        const auto g = halfplane_lens_game();
        const double x1 = 0.1, x2 = 1.85, y = 0.3;
        const auto p = g->manifold().point({x1, x2, y});
        const auto d1 = g->subdiff(0, p);
        REQUIRE(d1.is_singleton());
        const double s = 3 * y * x2 * x2;
        CHECK(std::abs(d1.generators()[0].components[0] - s * x1 * x1) < 1e-12);
        CHECK(std::abs(d1.generators()[0].components[1] - s * (-y * (1 - x2) * (1 - x2))) < 1e-12);
        const auto d2 = g->subdiff(1, p);
        CHECK(std::abs(d2.generators()[0].components[0] - (-2 * y * x2 + 4 * (x1 + 1))) < 1e-12);
        const auto kink = g->subdiff(1, g->manifold().point({x1, x2, 0.0}));
        REQUIRE(kink.size() == 2);
        CHECK(kink.support(g->factor(1), g->factor(1).tangent(kink.base(), {1})) == doctest::Approx(4 * (x1 + 1)));
    }

    TEST_CASE("every oracle passes a gradient check and every strategy set is convex") {
        for (const auto& key : registry_keys()) {
            for (const auto& variant : registry_variants(key).empty() ? std::vector<std::string>{""} : registry_variants(key)) {
                const auto rg = build_registered_game(key, variant);
                const Game& g = *rg.game;
                CAPTURE(key);
                CAPTURE(variant);
                for (std::size_t i = 0; i < g.player_count(); ++i)
                    CHECK(convexity_probe(g.strategy_set(i), 20, 5, 3).pass);
                Rng rng = make_rng(21);
                std::size_t checked = 0;
                for (const auto& p : g.set().sample(12, 8)) {
                    for (std::size_t i = 0; i < g.player_count(); ++i) {
                        const auto sub = g.subdiff(i, p);
                        if (!sub.is_singleton()) continue;
                        const auto& fi = g.factor(i);
                        const auto pi = g.component(p, i);
                        auto f = [&](const ManifoldPoint& x) { return g.payoff(i, g.deviate(p, i, x)); };
                        const auto v = fi.random_unit_tangent(pi, rng);
                        const auto gc = gradient_check(fi, f, pi, sub.generators()[0], v, {1e-3, 1e-4, 1e-5});
                        CHECK(gc.fitted_order >= 1.9);
                        ++checked;
                    }
                }
                CHECK(checked >= 10);
            }
        }
    }

    TEST_CASE("curated grids are deterministic and feasible") {
        for (const auto& key : registry_keys()) {
            const auto rg = build_registered_game(key);
            const auto a = curated_candidates(rg, 3), b = curated_candidates(rg, 3);
            REQUIRE(a.size() == b.size());
            for (std::size_t k = 0; k < a.size(); ++k) {
                CHECK(same_point(a[k].point, b[k].point));
                CHECK(rg.game->set().contains(a[k].point));
            }
        }
    }

    TEST_CASE("strategy sets can be swapped") {
        const auto rg = build_registered_game("6.4");
        const auto narrowed = with_strategy_set(rg, 0, BoxSet::interval(0.0, 1.0));
        CHECK(narrowed.game->strategy_set(0).bounded());
        CHECK_FALSE(rg.game->strategy_set(0).bounded());
        CHECK_THROWS(with_strategy_set(rg, 1, BoxSet::interval(0.0, 1.0)));
    }
}
