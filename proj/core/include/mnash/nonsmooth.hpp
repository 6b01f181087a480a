#pragma once

#include "mnash/geometry.hpp"
#include "mnash/manifolds.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mnash {

inline constexpr std::size_t kMaxGenerators = 8;

/// Convex hull of finitely many tangent vectors at a common base point.
class SubdifferentialValue {
public:
    /// Throws InputError on an empty list or more than kMaxGenerators entries,
    /// ContractViolation when a generator sits at a different base point.
    SubdifferentialValue(ManifoldPoint base, std::vector<TangentVector> generators);
    static SubdifferentialValue singleton(TangentVector gradient);

    const ManifoldPoint& base() const noexcept { return base_; }
    const std::vector<TangentVector>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }
    bool is_singleton() const noexcept { return generators_.size() == 1; }

    /// max over generators of ⟨ξ, v⟩, i.e. the support function of the hull.
    double support(const Manifold& m, const TangentVector& v) const;
    /// Σ λ_j ξ_j; weights must match the generator count.
    TangentVector combination(std::span<const double> weights) const;

private:
    ManifoldPoint base_;
    std::vector<TangentVector> generators_;
};

/// Blockwise Cartesian product of per-player generator sets on the product manifold.
SubdifferentialValue diagonal_subdiff(const ProductManifold& product, const ManifoldPoint& profile,
                                      const std::vector<SubdifferentialValue>& per_player);

struct ClarkeGrid {
    /// Distances of the base-point perturbations, coarse to fine.
    std::vector<double> radii{1e-2, 1e-3, 1e-4};
    /// Step lengths as multiples of the current radius.
    std::vector<double> step_factors{1.0, 0.1};
    /// Random unit perturbation directions per radius, on top of ±v and 0.
    std::size_t directions = 8;
};

struct ClarkeEstimate {
    double value = 0.0;
    /// Largest difference quotient seen at each radius.
    std::vector<double> per_radius;
    ClarkeGrid grid;
};

/// Estimates f⁰(p; v) = limsup (f(exp_q(t·w)) − f(q)) / t over q → p, t → 0⁺, with w the parallel
/// transport of v from p to q. The per-radius maxima are extrapolated polynomially to radius 0.
ClarkeEstimate clarke_directional_estimate(const Manifold& m, const std::function<double(const ManifoldPoint&)>& f,
                                           const ManifoldPoint& p, const TangentVector& v,
                                           const ClarkeGrid& grid = {}, std::uint64_t seed = 0);

}  // namespace mnash
