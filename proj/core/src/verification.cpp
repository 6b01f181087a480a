#include "mnash/verification.hpp"

#include "mnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mnash {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ManifoldPoint origin_of(const Manifold& m) {
    if (const auto* spd = dynamic_cast<const SPDManifold*>(&m)) return spd->identity();
    if (const auto* e = dynamic_cast<const EuclideanSpace*>(&m)) {
        (void)e;
        return m.point(Coords(m.coord_size(), 0.0));
    }
    if (dynamic_cast<const PoincareHalfPlane*>(&m)) return m.point({0.0, 1.0});
    if (const auto* prod = dynamic_cast<const ProductManifold*>(&m)) {
        std::vector<ManifoldPoint> parts;
        for (std::size_t i = 0; i < prod->factor_count(); ++i) parts.push_back(origin_of(prod->factor(i)));
        return prod->combine(parts);
    }
    throw InputError("no origin known for manifold " + m.id());
}

BatterySetResult run_set(const BatterySet& entry, const BatteryOptions& opt, std::uint64_t seed) {
    const StrategySet& k = *entry.set;
    BatterySetResult out;
    out.label = entry.label;
    out.kind = k.kind();
    out.expect_convex = entry.expect_convex;
    out.projection_applicable = k.geodesically_convex();

    if (out.projection_applicable) {
        out.nonexpansive = nonexpansiveness_check(k, opt.pairs, derive_seed(seed, 1));
        out.obtuse.pass = true;
        out.obtuse.worst = -kInf;
        const auto outside = k.sample_ambient(opt.obtuse_points, derive_seed(seed, 2));
        for (std::size_t j = 0; j < outside.size(); ++j) {
            const ManifoldPoint p = k.project(outside[j]);
            ObtuseAngleReport r = obtuse_angle_check(k, outside[j], p, opt.directions, derive_seed(seed, 100 + j));
            out.obtuse.directions += r.directions;
            if (r.worst > out.obtuse.worst) {
                out.obtuse.worst = r.worst;
                out.obtuse.witness = r.witness;
            }
            out.obtuse.pass = out.obtuse.pass && r.pass;
        }
        if (!std::isfinite(out.obtuse.worst)) out.obtuse.worst = 0.0;
    }
    out.convexity = convexity_probe(k, opt.convexity_pairs, opt.points_per_geodesic, derive_seed(seed, 3));

    if (entry.expect_convex)
        out.pattern_ok = out.projection_applicable && out.obtuse.pass && out.nonexpansive.pass && out.convexity.pass;
    else
        out.pattern_ok = !out.convexity.pass;
    return out;
}

CurvatureSummary run_curvature(const Manifold& m, CurvatureExpectation expectation, const BatteryOptions& opt) {
    CurvatureSummary out;
    out.expectation = expectation;
    out.min = kInf;
    out.max = -kInf;
    Rng rng = make_rng(opt.seed, 7);
    for (std::size_t j = 0; j < opt.curvature_planes; ++j) {
        const ManifoldPoint p = random_point(m, rng);
        const TangentVector u = m.random_unit_tangent(p, rng);
        const TangentVector w = m.random_unit_tangent(p, rng);
        const double kappa = sectional_curvature_estimate(m, p, u, w).extrapolated;
        out.min = std::min(out.min, kappa);
        out.max = std::max(out.max, kappa);
        ++out.planes;
    }
    switch (expectation) {
        case CurvatureExpectation::Flat: out.pass = out.min >= -1e-6 && out.max <= 1e-6; break;
        case CurvatureExpectation::MinusOne: out.pass = out.min >= -1.05 && out.max <= -0.95; break;
        case CurvatureExpectation::NonPositive: out.pass = out.max <= 1e-3; break;
    }
    return out;
}

}  // namespace

std::string to_string(CurvatureExpectation e) {
    switch (e) {
        case CurvatureExpectation::Flat: return "flat";
        case CurvatureExpectation::MinusOne: return "minus-one";
        case CurvatureExpectation::NonPositive: return "non-positive";
    }
    return "unknown";
}

ManifoldPoint random_point(const Manifold& m, Rng& rng, double spread) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const ManifoldPoint o = origin_of(m);
    return m.exp(o, spread * unif(rng) * m.random_unit_tangent(o, rng));
}

BatteryReport hadamard_battery(const std::string& key, std::shared_ptr<const Manifold> manifold,
                               const std::vector<BatterySet>& sets, CurvatureExpectation curvature,
                               const BatteryOptions& opt) {
    BatteryReport rep;
    rep.key = key;
    rep.manifold_id = manifold->id();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (&sets[i].set->manifold() != manifold.get() && sets[i].set->manifold().id() != manifold->id())
            throw InputError("battery set '" + sets[i].label + "' lives on another manifold");
        rep.sets.push_back(run_set(sets[i], opt, derive_seed(opt.seed, i)));
    }
    rep.curvature = run_curvature(*manifold, curvature, opt);
    rep.pattern_ok = rep.curvature.pass && std::all_of(rep.sets.begin(), rep.sets.end(),
                                                       [](const BatterySetResult& r) { return r.pattern_ok; });
    return rep;
}

std::vector<std::string> battery_keys() {
    return {"euclidean", "symmetric", "halfplane", "spd2", "spd3", "spd5", "product", "detband-euclidean"};
}

BatteryReport hadamard_battery(const std::string& key, const BatteryOptions& opt) {
    const double inf = kInf;
    if (key == "euclidean") {
        auto m = EuclideanSpace::vectors(3);
        return hadamard_battery(key, m,
                                {{"ball", std::make_shared<GeodesicBall>(m, m->point({0.5, 0.0, -0.5}), 1.0)},
                                 {"box", std::make_shared<BoxSet>(m, Coords{-1.0, 0.0, -inf}, Coords{1.0, 2.0, 0.5})}},
                                CurvatureExpectation::Flat, opt);
    }
    if (key == "symmetric") {
        auto m = EuclideanSpace::symmetric_matrices(2);
        return hadamard_battery(key, m,
                                {{"trace-half-space", std::make_shared<TraceHalfSpace>(m, 1.0)},
                                 {"ball", std::make_shared<GeodesicBall>(m, m->point({1.0, 0.0, 0.0, 1.0}), 1.0)}},
                                CurvatureExpectation::Flat, opt);
    }
    if (key == "halfplane") {
        auto m = PoincareHalfPlane::make();
        return hadamard_battery(key, m,
                                {{"ball", std::make_shared<GeodesicBall>(m, m->point({0.0, 1.0}), 1.0)},
                                 {"annulus", std::make_shared<HalfPlaneAnnulus>(m)}},
                                CurvatureExpectation::MinusOne, opt);
    }
    if (key == "spd2" || key == "spd3" || key == "spd5") {
        const std::size_t n = static_cast<std::size_t>(key.back() - '0');
        auto m = SPDManifold::make(n);
        std::vector<BatterySet> sets{{"ball", std::make_shared<GeodesicBall>(m, m->identity(), 1.0)},
                                     {"trace-inverse", std::make_shared<TraceInvSublevel>(m, static_cast<double>(n))}};
        if (n <= 3) sets.push_back({"det-band", std::make_shared<DetBandBall>(m)});
        return hadamard_battery(key, m, sets, CurvatureExpectation::NonPositive, opt);
    }
    if (key == "product") {
        auto line = EuclideanSpace::vectors(1);
        auto spd = SPDManifold::make(2);
        auto m = ProductManifold::make({line, spd});
        auto set = std::make_shared<ProductSet>(
            m, std::vector<SetPtr>{std::make_shared<BoxSet>(line, Coords{0.0}, Coords{2.0}),
                                   std::make_shared<DetBandBall>(spd)});
        return hadamard_battery(key, m, {{"interval-x-det-band", set}}, CurvatureExpectation::NonPositive, opt);
    }
    if (key == "detband-euclidean") {
        auto m = EuclideanSpace::symmetric_matrices(2);
        return hadamard_battery(key, m, {{"det-band", std::make_shared<DetBandBall>(m), false}},
                                CurvatureExpectation::Flat, opt);
    }
    throw InputError("unknown battery key '" + key + "'");
}

LeviCivitaReport levicivita_projection_experiment(const Manifold& m, const ManifoldPoint& p, const TangentVector& v0,
                                                  const TangentVector& w0, const std::vector<double>& t_grid,
                                                  const std::vector<double>& u_grid, double tol) {
    const auto [v, w] = orthonormalize(m, v0, w0);
    LeviCivitaReport rep;
    rep.manifold_id = m.id();
    rep.min_side_gap = kInf;
    double t_max = 0.0;
    for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
    const GeodesicSegmentImage segment(
        std::shared_ptr<const Manifold>(std::shared_ptr<const Manifold>{}, &m), p, v, -2.0 * t_max - 1e-3,
        2.0 * t_max + 1e-3);
    rep.pass = true;
    for (double t : t_grid) {
        const ManifoldPoint sigma_t = m.exp(p, t * v);
        const TangentVector w_t = m.transport(p, sigma_t, w);
        for (double u : u_grid) {
            LeviCivitaSample s;
            s.t = t;
            s.u = u;
            const ManifoldPoint gamma_t = m.exp(sigma_t, u * w_t);
            const ManifoldPoint gamma_0 = m.exp(p, u * w);
            const auto [proj, param] = project_onto_geodesic_image(segment, gamma_t);
            s.recovered_t = param;
            s.point_error = m.distance(proj, sigma_t);
            s.base_side = m.distance(p, sigma_t);
            s.far_side = m.distance(gamma_0, gamma_t);
            s.pass = s.point_error <= tol && s.base_side <= s.far_side + 1e-12 * (1.0 + s.far_side);
            rep.max_point_error = std::max(rep.max_point_error, s.point_error);
            rep.min_side_gap = std::min(rep.min_side_gap, s.far_side - s.base_side);
            rep.pass = rep.pass && s.pass;
            rep.samples.push_back(s);
        }
    }
    return rep;
}

CrosscheckReport equilibrium_set_crosscheck(const Game& game, const std::vector<Candidate>& candidates,
                                            bool full_equality, const CheckOptions& opt) {
    CrosscheckReport rep;
    rep.game = game.name();
    rep.full_equality = full_equality;
    rep.pattern_ok = true;
    rep.expectation_ok = true;
    for (const auto& c : candidates) {
        CandidateVerdict v;
        v.label = c.label;
        v.point = c.point;
        const EquilibriumCheck ne = is_nash_equilibrium(game, c.point, opt);
        const EquilibriumCheck ns = is_nash_stampacchia(game, c.point, opt);
        const EquilibriumCheck nc = is_nash_clarke(game, c.point, opt);
        v.ne = ne.pass;
        v.ns = ns.pass;
        v.nc = nc.pass;
        v.ne_worst = ne.worst;
        v.ns_worst = ns.worst;
        v.nc_worst = nc.worst;
        v.pattern_ok = (!v.ne || v.ns) && (v.ns == v.nc) && (!full_equality || v.ne == v.ns);
        if (c.expect_ne && *c.expect_ne != v.ne) v.expectation_ok = false;
        if (c.expect_ns && *c.expect_ns != v.ns) v.expectation_ok = false;
        rep.pattern_ok = rep.pattern_ok && v.pattern_ok;
        rep.expectation_ok = rep.expectation_ok && v.expectation_ok;
        rep.candidates.push_back(std::move(v));
    }
    return rep;
}

FixedPointAgreement fixed_point_agreement(const Game& game, double alpha, const std::vector<ManifoldPoint>& profiles,
                                          const CheckOptions& opt, double band) {
    FixedPointAgreement out;
    for (const auto& p : profiles) {
        ++out.profiles;
        const EquilibriumCheck ns = is_nash_stampacchia(game, p, opt);
        const double residual = fixed_point_residual(game, alpha, p).residual;
        const bool fixed = residual <= opt.tol;
        if (fixed == ns.pass) {
            ++out.agree;
        } else if (std::abs(ns.worst) <= band * opt.tol || residual <= band * opt.tol) {
            ++out.borderline;
        } else {
            ++out.disagree;
        }
    }
    out.pass = out.disagree == 0;
    return out;
}

double newton_inequality_gap(const linalg::Matrix& y) {
    const double n = static_cast<double>(y.rows());
    const double tr = y.trace();
    return (n - 1.0) / (2.0 * n) * tr * tr - linalg::elementary_symmetric2(y);
}

}  // namespace mnash
