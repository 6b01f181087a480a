#pragma once

#include "mnash/geometry.hpp"
#include "mnash/manifolds.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mnash {

enum class SetKind {
    Interval,
    HalfLine,
    Box,
    GeodesicBall,
    TraceHalfSpace,
    DetBandBall,
    TraceInvSublevel,
    HalfPlaneAnnulus,
    GeodesicSegmentImage,
    Product,
};

std::string to_string(SetKind kind);

/// Membership slack applied to every defining inequality.
inline constexpr double kMembershipTol = 1e-10;

/// Closed geodesically convex subset of a Hadamard manifold.
class StrategySet {
public:
    explicit StrategySet(std::shared_ptr<const Manifold> manifold);
    virtual ~StrategySet() = default;

    virtual SetKind kind() const = 0;
    const Manifold& manifold() const { return *manifold_; }
    std::shared_ptr<const Manifold> manifold_ptr() const { return manifold_; }

    /// Largest excess over the defining inequalities; 0 inside.
    virtual double violation(const ManifoldPoint& p) const = 0;
    bool contains(const ManifoldPoint& p) const { return violation(p) <= kMembershipTol; }

    /// Metric projection. Throws ContractViolation when the set is not convex for the metric.
    virtual ManifoldPoint project(const ManifoldPoint& q) const = 0;

    /// Interior point that all radial sampling starts from.
    virtual ManifoldPoint anchor() const = 0;
    /// Distinguished boundary points (interval ends, corners), always sampled first.
    virtual std::vector<ManifoldPoint> landmarks() const { return {}; }
    virtual bool bounded() const = 0;
    /// Cap on radial reach for unbounded directions.
    virtual double sampling_radius() const { return 3.0; }
    virtual bool geodesically_convex() const { return true; }

    /// Deterministic sample of the set. At least a third of the random draws sit on the boundary.
    virtual std::vector<ManifoldPoint> sample(std::size_t count, std::uint64_t seed) const;
    /// Points of the ambient manifold scattered around the set, most of them outside it.
    virtual std::vector<ManifoldPoint> sample_ambient(std::size_t count, std::uint64_t seed) const;

    /// Largest s along exp(anchor, s·v) that stays inside, capped at the sampling radius for
    /// unbounded rays.
    double boundary_reach(const TangentVector& unit_direction) const;

protected:
    void require_owned(const ManifoldPoint& p, const char* op) const;

private:
    std::shared_ptr<const Manifold> manifold_;
};

using SetPtr = std::shared_ptr<const StrategySet>;

/// Coordinate box in R^m; bounds may be infinite. Interval and HalfLine are one-dimensional boxes.
class BoxSet final : public StrategySet {
public:
    BoxSet(std::shared_ptr<const Manifold> manifold, Coords lower, Coords upper);
    static std::shared_ptr<const BoxSet> interval(double lo, double hi);
    static std::shared_ptr<const BoxSet> half_line(double lo);

    SetKind kind() const override;
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    std::vector<ManifoldPoint> landmarks() const override;
    bool bounded() const override;

    const Coords& lower() const { return lower_; }
    const Coords& upper() const { return upper_; }

private:
    Coords lower_;
    Coords upper_;
};

class GeodesicBall final : public StrategySet {
public:
    GeodesicBall(std::shared_ptr<const Manifold> manifold, ManifoldPoint center, double radius);

    SetKind kind() const override { return SetKind::GeodesicBall; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override { return center_; }
    bool bounded() const override { return true; }
    double sampling_radius() const override { return radius_; }

    const ManifoldPoint& center() const { return center_; }
    double radius() const { return radius_; }

private:
    ManifoldPoint center_;
    double radius_;
};

/// {X : tr X ≥ c} in the symmetric-matrix Euclidean space.
class TraceHalfSpace final : public StrategySet {
public:
    TraceHalfSpace(std::shared_ptr<const EuclideanSpace> manifold, double lower_trace);

    SetKind kind() const override { return SetKind::TraceHalfSpace; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    bool bounded() const override { return false; }

    double lower_trace() const { return c_; }

private:
    std::size_t n_;
    double c_;
};

/// {X ≻ 0 : tr(ln²X) ≤ r², det_lo ≤ det X ≤ det_hi}.
///
/// Convex for the trace-type SPD metric; on the symmetric-matrix Euclidean space the same
/// inequalities describe a non-convex set that only supports membership and probing.
class DetBandBall final : public StrategySet {
public:
    DetBandBall(std::shared_ptr<const Manifold> manifold, double radius = 1.0, double det_lo = 1.0,
                double det_hi = 2.0);

    SetKind kind() const override { return SetKind::DetBandBall; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    /// diag(det_hi, 1, …, 1) and its coordinate permutations, plus det_lo^{1/n}·I.
    std::vector<ManifoldPoint> landmarks() const override;
    bool bounded() const override { return true; }
    double sampling_radius() const override { return radius_; }
    bool geodesically_convex() const override { return spd_; }

private:
    std::size_t n_;
    bool spd_;
    double radius_;
    double log_det_lo_;
    double log_det_hi_;
};

/// {X ≻ 0 : tr(X⁻¹) ≤ b}.
class TraceInvSublevel final : public StrategySet {
public:
    TraceInvSublevel(std::shared_ptr<const SPDManifold> manifold, double bound);

    SetKind kind() const override { return SetKind::TraceInvSublevel; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    bool bounded() const override { return false; }

    double bound() const { return bound_; }

private:
    std::size_t n_;
    double bound_;
};

/// {x1 ≥ 0, x1² + x2² ≤ 4 ≤ (x1 − 1)² + x2²} in the half-plane: a geodesic triangle cut out
/// by the vertical line x1 = 0 and two semicircles centred on the axis.
class HalfPlaneAnnulus final : public StrategySet {
public:
    explicit HalfPlaneAnnulus(std::shared_ptr<const PoincareHalfPlane> manifold);

    SetKind kind() const override { return SetKind::HalfPlaneAnnulus; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    std::vector<ManifoldPoint> landmarks() const override;
    bool bounded() const override { return true; }
    double sampling_radius() const override { return 0.3; }
};

/// Image of t ↦ exp_p(t·V) for t in [t_lo, t_hi].
class GeodesicSegmentImage final : public StrategySet {
public:
    GeodesicSegmentImage(std::shared_ptr<const Manifold> manifold, ManifoldPoint origin, TangentVector velocity,
                         double t_lo, double t_hi);

    SetKind kind() const override { return SetKind::GeodesicSegmentImage; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    std::vector<ManifoldPoint> landmarks() const override;
    bool bounded() const override { return true; }
    std::vector<ManifoldPoint> sample(std::size_t count, std::uint64_t seed) const override;

    ManifoldPoint at(double t) const;
    /// Golden-section minimization of t ↦ d(q, σ(t)), parameter tolerance 1e-10.
    std::pair<ManifoldPoint, double> project_with_parameter(const ManifoldPoint& q) const;

private:
    ManifoldPoint origin_;
    TangentVector velocity_;
    double t_lo_;
    double t_hi_;
};

/// Factorwise set on a product manifold.
class ProductSet final : public StrategySet {
public:
    ProductSet(std::shared_ptr<const ProductManifold> manifold, std::vector<SetPtr> factors);

    SetKind kind() const override { return SetKind::Product; }
    double violation(const ManifoldPoint& p) const override;
    ManifoldPoint project(const ManifoldPoint& q) const override;
    ManifoldPoint anchor() const override;
    bool bounded() const override;
    bool geodesically_convex() const override;
    std::vector<ManifoldPoint> sample(std::size_t count, std::uint64_t seed) const override;
    std::vector<ManifoldPoint> sample_ambient(std::size_t count, std::uint64_t seed) const override;

    const ProductManifold& product() const { return *product_; }
    const StrategySet& factor(std::size_t i) const { return *factors_.at(i); }
    SetPtr factor_ptr(std::size_t i) const { return factors_.at(i); }
    std::size_t factor_count() const { return factors_.size(); }

private:
    std::shared_ptr<const ProductManifold> product_;
    std::vector<SetPtr> factors_;
};

std::pair<ManifoldPoint, double> project_onto_geodesic_image(const GeodesicSegmentImage& segment,
                                                             const ManifoldPoint& q);

// ---------------------------------------------------------------------------
// Property probes

struct ObtuseAngleReport {
    bool pass = false;
    /// Largest g(γ̇(0), σ̇(0)) over the sampled directions into the set.
    double worst = 0.0;
    std::size_t directions = 0;
    std::optional<ManifoldPoint> witness;
};

/// Checks that p is a projection candidate for q: every geodesic from p into K makes a
/// non-acute angle with the geodesic from p to q.
ObtuseAngleReport obtuse_angle_check(const StrategySet& k, const ManifoldPoint& q, const ManifoldPoint& p,
                                     std::size_t directions, std::uint64_t seed, double tol = 1e-7);

struct NonexpansivenessReport {
    bool pass = false;
    double max_ratio = 0.0;
    std::size_t pairs = 0;
    std::optional<std::pair<ManifoldPoint, ManifoldPoint>> witness;
};

NonexpansivenessReport nonexpansiveness_check(const StrategySet& k, std::size_t pairs, std::uint64_t seed,
                                              double tol = 1e-9);

struct ConvexityWitness {
    ManifoldPoint from;
    ManifoldPoint to;
    double s = 0.0;
    ManifoldPoint point;
    double violation = 0.0;
};

struct ConvexityReport {
    bool pass = false;
    std::size_t pairs = 0;
    std::optional<ConvexityWitness> witness;
};

/// Samples the geodesic from a to b at s = j/(m+1), j = 1..m; returns the worst exit if any.
std::optional<ConvexityWitness> geodesic_exit(const StrategySet& k, const ManifoldPoint& a, const ManifoldPoint& b,
                                              std::size_t points_per_geodesic);

ConvexityReport convexity_probe(const StrategySet& k, std::size_t pairs, std::size_t points_per_geodesic,
                                std::uint64_t seed);

}  // namespace mnash
