#pragma once

#include "mnash/random.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mnash {

using Coords = std::vector<double>;

/// A point in the single global chart of its manifold.
struct ManifoldPoint {
    Coords coords;
    std::string manifold_id;
};

/// Exact equality of owner and coordinates.
bool same_point(const ManifoldPoint& a, const ManifoldPoint& b) noexcept;

struct TangentVector {
    ManifoldPoint base;
    Coords components;
};

TangentVector operator+(const TangentVector& u, const TangentVector& v);
TangentVector operator-(const TangentVector& u, const TangentVector& v);
TangentVector operator*(double a, const TangentVector& v);
TangentVector operator-(const TangentVector& v);

/// Riemannian manifold of Hadamard type with one global chart.
///
/// The public members validate owners and base points and forward to the protected
/// kernels, which work on raw chart coordinates.
class Manifold {
public:
    virtual ~Manifold() = default;

    virtual std::string id() const = 0;
    /// Intrinsic dimension.
    virtual std::size_t dimension() const = 0;
    /// Length of the flat chart layout.
    virtual std::size_t coord_size() const = 0;

    bool is_point(std::span<const double> coords) const;
    /// Validated constructor; throws DomainError on chart-invalid input.
    ManifoldPoint point(Coords coords) const;
    TangentVector tangent(const ManifoldPoint& base, Coords components) const;
    TangentVector zero(const ManifoldPoint& base) const;

    double inner(const ManifoldPoint& p, const TangentVector& u, const TangentVector& v) const;
    double inner(const TangentVector& u, const TangentVector& v) const { return inner(u.base, u, v); }
    double norm(const TangentVector& v) const;

    ManifoldPoint exp(const ManifoldPoint& p, const TangentVector& v) const;
    ManifoldPoint exp(const TangentVector& v) const { return exp(v.base, v); }
    TangentVector log(const ManifoldPoint& p, const ManifoldPoint& q) const;
    double distance(const ManifoldPoint& p, const ManifoldPoint& q) const;
    /// Point at fraction s of the geodesic from p to q.
    ManifoldPoint geodesic(const ManifoldPoint& p, const ManifoldPoint& q, double s) const;
    /// Parallel transport along the minimizing geodesic from p to q.
    TangentVector transport(const ManifoldPoint& p, const ManifoldPoint& q, const TangentVector& v) const;
    /// Riesz map of a chart differential: inner(p, result, v) == <egrad, v> in coordinates.
    TangentVector egrad_to_rgrad(const ManifoldPoint& p, std::span<const double> egrad) const;
    /// Unit vector drawn from the isotropic Gaussian of the tangent space at p.
    TangentVector random_unit_tangent(const ManifoldPoint& p, Rng& rng) const;

    void require_owned(const ManifoldPoint& p, const char* op) const;
    void require_based(const TangentVector& v, const ManifoldPoint& p, const char* op) const;

protected:
    virtual bool chart_valid(std::span<const double> x) const = 0;
    virtual bool tangent_valid(std::span<const double> base, std::span<const double> v) const;
    virtual double inner_at(std::span<const double> p, std::span<const double> u,
                            std::span<const double> v) const = 0;
    virtual Coords exp_at(std::span<const double> p, std::span<const double> v) const = 0;
    /// Defaults to shooting.
    virtual Coords log_at(std::span<const double> p, std::span<const double> q) const;
    virtual double distance_at(std::span<const double> p, std::span<const double> q) const;
    virtual Coords geodesic_at(std::span<const double> p, std::span<const double> q, double s) const;
    virtual Coords transport_at(std::span<const double> p, std::span<const double> q,
                                std::span<const double> v) const = 0;
    virtual Coords rgrad_at(std::span<const double> p, std::span<const double> egrad) const = 0;
    virtual Coords gaussian_tangent_at(std::span<const double> p, Rng& rng) const = 0;

    friend class ProductManifold;
    friend Coords shooting_log_coords(const Manifold& m, std::span<const double> p,
                                      std::span<const double> q, double tol, int max_iter);
};

/// Damped Newton shooting on v ↦ exp_p(v) − q, started at the chart difference.
/// Used where no closed-form logarithm exists and as an independent oracle.
TangentVector shooting_log(const Manifold& m, const ManifoldPoint& p, const ManifoldPoint& q,
                           double tol = 1e-13, int max_iter = 100);

/// Gram-Schmidt in the metric at the common base point.
/// Throws InputError when w is (numerically) parallel to u.
std::pair<TangentVector, TangentVector> orthonormalize(const Manifold& m, const TangentVector& u,
                                                       const TangentVector& w);

struct CurvatureEstimate {
    std::vector<TangentVector> plane_basis;
    std::vector<std::pair<double, double>> scales;
    std::vector<double> values;
    double extrapolated = 0.0;
};

/// t = u = 2^{-k} s0, k = 0..levels-1.
std::vector<std::pair<double, double>> curvature_scale_ladder(double s0 = 0.2, int levels = 6);

/// Levi-Civita parallelogramoid estimate of the sectional curvature of span{u, w}.
/// Per scale: (d²(p,σ(t)) − d²(γ₀(u),γ_t(u))) / (d(p,γ₀(u))·d(p,σ(t)))², followed by one
/// Richardson step on the two finest scales.
CurvatureEstimate sectional_curvature_estimate(
    const Manifold& m, const ManifoldPoint& p, const TangentVector& u, const TangentVector& w,
    const std::vector<std::pair<double, double>>& scales = curvature_scale_ladder());

struct GradientCheck {
    std::vector<double> steps;
    std::vector<double> errors;
    /// Least-squares slope of log error against log step; +inf when every error is at round-off.
    double fitted_order = 0.0;
};

/// Taylor remainder |f(exp_p(tv)) − f(p) − t⟨grad, v⟩| over the given steps.
GradientCheck gradient_check(const Manifold& m, const std::function<double(const ManifoldPoint&)>& f,
                             const ManifoldPoint& p, const TangentVector& grad, const TangentVector& v,
                             const std::vector<double>& steps = {1e-2, 1e-3, 1e-4});

}  // namespace mnash
