#include "mnash/nonsmooth.hpp"

#include "mnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mnash {

SubdifferentialValue::SubdifferentialValue(ManifoldPoint base, std::vector<TangentVector> generators)
    : base_(std::move(base)), generators_(std::move(generators)) {
    if (generators_.empty()) throw InputError("subdifferential needs at least one generator");
    if (generators_.size() > kMaxGenerators)
        throw InputError("subdifferential has " + std::to_string(generators_.size()) + " generators; at most " +
                         std::to_string(kMaxGenerators) + " are supported");
    for (const auto& g : generators_) {
        if (!same_point(g.base, base_))
            throw ContractViolation("subdifferential generator is not based at the subdifferential's point");
        for (double c : g.components)
            if (!std::isfinite(c)) throw NumericError("subdifferential generator is not finite");
    }
}

SubdifferentialValue SubdifferentialValue::singleton(TangentVector gradient) {
    ManifoldPoint base = gradient.base;
    return SubdifferentialValue(std::move(base), {std::move(gradient)});
}

double SubdifferentialValue::support(const Manifold& m, const TangentVector& v) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : generators_) best = std::max(best, m.inner(base_, g, v));
    return best;
}

TangentVector SubdifferentialValue::combination(std::span<const double> weights) const {
    if (weights.size() != generators_.size()) throw ContractViolation("hull weights do not match generator count");
    TangentVector out = generators_.front();
    std::fill(out.components.begin(), out.components.end(), 0.0);
    for (std::size_t j = 0; j < generators_.size(); ++j)
        for (std::size_t k = 0; k < out.components.size(); ++k)
            out.components[k] += weights[j] * generators_[j].components[k];
    return out;
}

SubdifferentialValue diagonal_subdiff(const ProductManifold& product, const ManifoldPoint& profile,
                                      const std::vector<SubdifferentialValue>& per_player) {
    product.require_owned(profile, "diagonal_subdiff");
    if (per_player.size() != product.factor_count())
        throw ContractViolation("diagonal_subdiff: one subdifferential per player required");
    std::size_t total = 1;
    for (const auto& s : per_player) total *= s.size();
    if (total > kMaxGenerators)
        throw InputError("diagonal subdifferential would have " + std::to_string(total) + " generators");

    std::vector<TangentVector> generators;
    std::vector<std::size_t> index(per_player.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<TangentVector> parts;
        for (std::size_t i = 0; i < per_player.size(); ++i) parts.push_back(per_player[i].generators()[index[i]]);
        generators.push_back(product.combine(profile, parts));
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (++index[i] < per_player[i].size()) break;
            index[i] = 0;
        }
    }
    return SubdifferentialValue(profile, std::move(generators));
}

ClarkeEstimate clarke_directional_estimate(const Manifold& m, const std::function<double(const ManifoldPoint&)>& f,
                                           const ManifoldPoint& p, const TangentVector& v, const ClarkeGrid& grid,
                                           std::uint64_t seed) {
    m.require_based(v, p, "clarke_directional_estimate");
    if (grid.radii.size() < 2 || grid.step_factors.empty())
        throw InputError("Clarke grid needs at least two radii and one step factor");
    ClarkeEstimate out;
    out.grid = grid;
    const double vnorm = m.norm(v);
    if (vnorm == 0.0) {
        out.per_radius.assign(grid.radii.size(), 0.0);
        return out;
    }

    Rng rng = make_rng(seed);
    std::vector<TangentVector> offsets{m.zero(p), (1.0 / vnorm) * v, (-1.0 / vnorm) * v};
    for (std::size_t k = 0; k < grid.directions; ++k) offsets.push_back(m.random_unit_tangent(p, rng));

    for (double r : grid.radii) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& u : offsets) {
            const ManifoldPoint q = m.exp(p, r * u);
            const TangentVector w = m.transport(p, q, v);
            const double fq = f(q);
            for (double factor : grid.step_factors) {
                const double t = factor * r;
                best = std::max(best, (f(m.exp(q, t * w)) - fq) / t);
            }
        }
        out.per_radius.push_back(best);
    }
    // Polynomial extrapolation of the per-radius maxima to radius 0 (Lagrange form).
    out.value = 0.0;
    for (std::size_t i = 0; i < grid.radii.size(); ++i) {
        double weight = 1.0;
        for (std::size_t j = 0; j < grid.radii.size(); ++j)
            if (j != i) weight *= grid.radii[j] / (grid.radii[j] - grid.radii[i]);
        out.value += weight * out.per_radius[i];
    }
    return out;
}

}  // namespace mnash
