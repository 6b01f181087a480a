#pragma once

#include "mnash/convex_sets.hpp"
#include "mnash/nonsmooth.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace mnash {

/// Payoff of one player as a function of the full profile.
using PayoffFn = std::function<double(const ManifoldPoint& profile)>;
/// Clarke subdifferential of the player's payoff in its own slot, based at that slot's point.
using SubdiffFn = std::function<SubdifferentialValue(const ManifoldPoint& profile)>;

struct Player {
    std::string name;
    SetPtr set;
    PayoffFn value;
    SubdiffFn subdiff;
};

/// n-player game; the product manifold and product strategy set are assembled from the players.
class Game {
public:
    Game(std::string name, std::vector<Player> players);

    const std::string& name() const noexcept { return name_; }
    std::size_t player_count() const noexcept { return players_.size(); }
    const Player& player(std::size_t i) const { return players_.at(i); }
    const Manifold& factor(std::size_t i) const { return players_.at(i).set->manifold(); }
    const StrategySet& strategy_set(std::size_t i) const { return *players_.at(i).set; }

    const ProductManifold& manifold() const noexcept { return *manifold_; }
    std::shared_ptr<const ProductManifold> manifold_ptr() const noexcept { return manifold_; }
    const ProductSet& set() const noexcept { return *set_; }
    std::shared_ptr<const ProductSet> set_ptr() const noexcept { return set_; }

    ManifoldPoint profile(const std::vector<ManifoldPoint>& parts) const { return manifold_->combine(parts); }
    ManifoldPoint component(const ManifoldPoint& p, std::size_t i) const { return manifold_->component(p, i); }
    /// p with player i's strategy replaced.
    ManifoldPoint deviate(const ManifoldPoint& p, std::size_t i, const ManifoldPoint& q) const {
        return manifold_->replace(p, i, q);
    }

    double payoff(std::size_t i, const ManifoldPoint& p) const;
    /// Validated call of player i's oracle.
    SubdifferentialValue subdiff(std::size_t i, const ManifoldPoint& p) const;
    /// ∂^Δ f(p) on the product manifold.
    SubdifferentialValue diagonal(const ManifoldPoint& p) const;
    /// One generator per player, blockwise; default picks the first generator of each.
    TangentVector selection(const ManifoldPoint& p, const std::vector<std::size_t>& choice = {}) const;

private:
    std::string name_;
    std::vector<Player> players_;
    std::shared_ptr<const ProductManifold> manifold_;
    std::shared_ptr<const ProductSet> set_;
};

SubdifferentialValue diagonal_subdiff(const Game& game, const ManifoldPoint& p);

}  // namespace mnash
