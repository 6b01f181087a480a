#pragma once

#include "mnash/convex_sets.hpp"
#include "mnash/equilibria.hpp"
#include "mnash/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mnash {

// ---------------------------------------------------------------------------
// Projection and curvature battery

enum class CurvatureExpectation { Flat, MinusOne, NonPositive };
std::string to_string(CurvatureExpectation e);

struct BatterySet {
    std::string label;
    SetPtr set;
    /// Negative controls are expected to fail the convexity probe.
    bool expect_convex = true;
};

struct BatteryOptions {
    /// Pairs for the non-expansiveness check.
    std::size_t pairs = 1000;
    /// Outside points whose projection gets an obtuse-angle check.
    std::size_t obtuse_points = 20;
    std::size_t directions = 100;
    std::size_t convexity_pairs = 50;
    std::size_t points_per_geodesic = 9;
    std::size_t curvature_planes = 20;
    std::uint64_t seed = 0;
};

struct BatterySetResult {
    std::string label;
    SetKind kind{};
    bool expect_convex = true;
    /// False when the metric projection is undefined (non-convex control).
    bool projection_applicable = true;
    ObtuseAngleReport obtuse;
    NonexpansivenessReport nonexpansive;
    ConvexityReport convexity;
    bool pattern_ok = false;
};

struct CurvatureSummary {
    CurvatureExpectation expectation = CurvatureExpectation::Flat;
    std::size_t planes = 0;
    double min = 0.0;
    double max = 0.0;
    bool pass = false;
};

struct BatteryReport {
    std::string key;
    std::string manifold_id;
    std::vector<BatterySetResult> sets;
    CurvatureSummary curvature;
    bool pattern_ok = false;
};

/// Runs the obtuse-angle, non-expansiveness and convexity probes on every set and checks the
/// sign of the sectional curvature at random planes.
BatteryReport hadamard_battery(const std::string& key, std::shared_ptr<const Manifold> manifold,
                               const std::vector<BatterySet>& sets, CurvatureExpectation curvature,
                               const BatteryOptions& opt = {});

/// Named configurations: euclidean, symmetric, halfplane, spd2, spd3, spd5, product, detband-euclidean.
std::vector<std::string> battery_keys();
BatteryReport hadamard_battery(const std::string& key, const BatteryOptions& opt = {});

/// Random base point near the natural origin of a manifold (0, I, (0, 1)).
ManifoldPoint random_point(const Manifold& m, Rng& rng, double spread = 1.0);

// ---------------------------------------------------------------------------
// Projection onto a geodesic

struct LeviCivitaSample {
    double t = 0.0;
    double u = 0.0;
    /// Recovered parameter of the projection and distance of the projected point from σ(t).
    double recovered_t = 0.0;
    double point_error = 0.0;
    /// d(p, σ(t)) and d(γ_0(u), γ_t(u)).
    double base_side = 0.0;
    double far_side = 0.0;
    bool pass = false;
};

struct LeviCivitaReport {
    std::string manifold_id;
    std::vector<LeviCivitaSample> samples;
    double max_point_error = 0.0;
    /// Smallest far_side − base_side.
    double min_side_gap = 0.0;
    bool pass = false;
};

/// σ(t) = exp_p(tV), W(t) parallel along σ with W ⊥ V, γ_t(u) = exp_{σ(t)}(uW(t)). Checks that
/// the projection of γ_t(u) onto the image of σ is σ(t) and that d(p, σ(t)) ≤ d(γ_0(u), γ_t(u)).
LeviCivitaReport levicivita_projection_experiment(const Manifold& m, const ManifoldPoint& p, const TangentVector& v0,
                                                  const TangentVector& w0, const std::vector<double>& t_grid,
                                                  const std::vector<double>& u_grid, double tol = 1e-6);

// ---------------------------------------------------------------------------
// Equilibrium-set cross-check

struct Candidate {
    std::string label;
    ManifoldPoint point;
    std::optional<bool> expect_ne;
    std::optional<bool> expect_ns;
};

struct CandidateVerdict {
    std::string label;
    ManifoldPoint point;
    bool ne = false;
    bool ns = false;
    bool nc = false;
    double ne_worst = 0.0;
    double ns_worst = 0.0;
    double nc_worst = 0.0;
    bool pattern_ok = false;
    bool expectation_ok = true;
};

struct CrosscheckReport {
    std::string game;
    std::vector<CandidateVerdict> candidates;
    bool full_equality = false;
    bool pattern_ok = false;
    bool expectation_ok = false;
};

/// Classifies candidates by the three checkers; the inclusion NE ⊂ NS = NC must hold on every
/// candidate, and NE = NS too when `full_equality` is set.
CrosscheckReport equilibrium_set_crosscheck(const Game& game, const std::vector<Candidate>& candidates,
                                            bool full_equality, const CheckOptions& opt = {});

// ---------------------------------------------------------------------------
// Fixed-point characterization

struct FixedPointAgreement {
    std::size_t profiles = 0;
    std::size_t agree = 0;
    /// Disagreements where either decision sits within the tolerance band.
    std::size_t borderline = 0;
    std::size_t disagree = 0;
    bool pass = false;
};

/// Compares the variational verdict with d(p, A_α(p)) ≤ tol on the given profiles.
FixedPointAgreement fixed_point_agreement(const Game& game, double alpha, const std::vector<ManifoldPoint>& profiles,
                                          const CheckOptions& opt = {}, double band = 10.0);

/// ((n−1)/(2n))·tr²(Y) − S₂(Y); non-negative for every symmetric Y.
double newton_inequality_gap(const linalg::Matrix& y);

}  // namespace mnash
