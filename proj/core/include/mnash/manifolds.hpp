#pragma once

#include "mnash/geometry.hpp"

#include <memory>
#include <vector>

namespace mnash {

/// Flat space: either R^m, or the symmetric n×n matrices with ⟨U,V⟩ = tr(UV).
class EuclideanSpace final : public Manifold {
public:
    static std::shared_ptr<const EuclideanSpace> vectors(std::size_t dim);
    static std::shared_ptr<const EuclideanSpace> symmetric_matrices(std::size_t n);

    EuclideanSpace(std::size_t dim, std::size_t matrix_order);

    std::string id() const override;
    std::size_t dimension() const override;
    std::size_t coord_size() const override { return size_; }
    /// 0 for plain vectors.
    std::size_t matrix_order() const noexcept { return order_; }

protected:
    bool chart_valid(std::span<const double> x) const override;
    bool tangent_valid(std::span<const double> base, std::span<const double> v) const override;
    double inner_at(std::span<const double> p, std::span<const double> u,
                    std::span<const double> v) const override;
    Coords exp_at(std::span<const double> p, std::span<const double> v) const override;
    Coords log_at(std::span<const double> p, std::span<const double> q) const override;
    double distance_at(std::span<const double> p, std::span<const double> q) const override;
    Coords geodesic_at(std::span<const double> p, std::span<const double> q, double s) const override;
    Coords transport_at(std::span<const double> p, std::span<const double> q,
                        std::span<const double> v) const override;
    Coords rgrad_at(std::span<const double> p, std::span<const double> egrad) const override;
    Coords gaussian_tangent_at(std::span<const double> p, Rng& rng) const override;

private:
    std::size_t size_;
    std::size_t order_;
};

/// Upper half-plane {x2 > 0} with metric δ_ij / x2².
class PoincareHalfPlane final : public Manifold {
public:
    static std::shared_ptr<const PoincareHalfPlane> make();

    std::string id() const override { return "halfplane"; }
    std::size_t dimension() const override { return 2; }
    std::size_t coord_size() const override { return 2; }

    /// Transport by integrating the parallel-transport ODE with classical RK4; exposed for tests.
    Coords transport_rk4(std::span<const double> p, std::span<const double> q, std::span<const double> v,
                         int steps) const;

protected:
    bool chart_valid(std::span<const double> x) const override;
    double inner_at(std::span<const double> p, std::span<const double> u,
                    std::span<const double> v) const override;
    Coords exp_at(std::span<const double> p, std::span<const double> v) const override;
    Coords log_at(std::span<const double> p, std::span<const double> q) const override;
    double distance_at(std::span<const double> p, std::span<const double> q) const override;
    Coords transport_at(std::span<const double> p, std::span<const double> q,
                        std::span<const double> v) const override;
    Coords rgrad_at(std::span<const double> p, std::span<const double> egrad) const override;
    Coords gaussian_tangent_at(std::span<const double> p, Rng& rng) const override;
};

/// Symmetric positive definite n×n matrices with ⟨U,V⟩_X = tr(X⁻¹ V X⁻¹ U).
class SPDManifold final : public Manifold {
public:
    static std::shared_ptr<const SPDManifold> make(std::size_t n);
    explicit SPDManifold(std::size_t n);

    std::string id() const override;
    std::size_t dimension() const override { return n_ * (n_ + 1) / 2; }
    std::size_t coord_size() const override { return n_ * n_; }
    std::size_t order() const noexcept { return n_; }

    ManifoldPoint identity() const;

protected:
    bool chart_valid(std::span<const double> x) const override;
    bool tangent_valid(std::span<const double> base, std::span<const double> v) const override;
    double inner_at(std::span<const double> p, std::span<const double> u,
                    std::span<const double> v) const override;
    Coords exp_at(std::span<const double> p, std::span<const double> v) const override;
    Coords log_at(std::span<const double> p, std::span<const double> q) const override;
    double distance_at(std::span<const double> p, std::span<const double> q) const override;
    Coords geodesic_at(std::span<const double> p, std::span<const double> q, double s) const override;
    Coords transport_at(std::span<const double> p, std::span<const double> q,
                        std::span<const double> v) const override;
    Coords rgrad_at(std::span<const double> p, std::span<const double> egrad) const override;
    Coords gaussian_tangent_at(std::span<const double> p, Rng& rng) const override;

private:
    std::size_t n_;
};

/// Riemannian product; every operation acts factorwise on concatenated layouts.
class ProductManifold final : public Manifold {
public:
    static std::shared_ptr<const ProductManifold> make(std::vector<std::shared_ptr<const Manifold>> factors);
    explicit ProductManifold(std::vector<std::shared_ptr<const Manifold>> factors);

    std::string id() const override;
    std::size_t dimension() const override;
    std::size_t coord_size() const override { return offsets_.back(); }

    std::size_t factor_count() const noexcept { return factors_.size(); }
    const Manifold& factor(std::size_t i) const { return *factors_.at(i); }
    std::shared_ptr<const Manifold> factor_ptr(std::size_t i) const { return factors_.at(i); }
    std::size_t offset(std::size_t i) const { return offsets_.at(i); }

    ManifoldPoint component(const ManifoldPoint& p, std::size_t i) const;
    TangentVector component(const TangentVector& v, std::size_t i) const;
    ManifoldPoint combine(const std::vector<ManifoldPoint>& parts) const;
    TangentVector combine(const ManifoldPoint& base, const std::vector<TangentVector>& parts) const;
    /// p with slot i replaced by q.
    ManifoldPoint replace(const ManifoldPoint& p, std::size_t i, const ManifoldPoint& q) const;

protected:
    bool chart_valid(std::span<const double> x) const override;
    bool tangent_valid(std::span<const double> base, std::span<const double> v) const override;
    double inner_at(std::span<const double> p, std::span<const double> u,
                    std::span<const double> v) const override;
    Coords exp_at(std::span<const double> p, std::span<const double> v) const override;
    Coords log_at(std::span<const double> p, std::span<const double> q) const override;
    double distance_at(std::span<const double> p, std::span<const double> q) const override;
    Coords geodesic_at(std::span<const double> p, std::span<const double> q, double s) const override;
    Coords transport_at(std::span<const double> p, std::span<const double> q,
                        std::span<const double> v) const override;
    Coords rgrad_at(std::span<const double> p, std::span<const double> egrad) const override;
    Coords gaussian_tangent_at(std::span<const double> p, Rng& rng) const override;

private:
    std::span<const double> slice(std::span<const double> x, std::size_t i) const;

    std::vector<std::shared_ptr<const Manifold>> factors_;
    std::vector<std::size_t> offsets_;
};

}  // namespace mnash
