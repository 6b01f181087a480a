#include "mnash/game.hpp"

#include "mnash/errors.hpp"

#include <cmath>

namespace mnash {

namespace {

std::shared_ptr<const ProductManifold> assemble_manifold(const std::vector<Player>& players) {
    std::vector<std::shared_ptr<const Manifold>> factors;
    for (const auto& pl : players) {
        if (!pl.set) throw InputError("player '" + pl.name + "' has no strategy set");
        if (!pl.value || !pl.subdiff) throw InputError("player '" + pl.name + "' has no payoff oracle");
        factors.push_back(pl.set->manifold_ptr());
    }
    return ProductManifold::make(std::move(factors));
}

}  // namespace

Game::Game(std::string name, std::vector<Player> players) : name_(std::move(name)), players_(std::move(players)) {
    if (players_.size() < 2) throw InputError("a game needs at least two players");
    manifold_ = assemble_manifold(players_);
    std::vector<SetPtr> sets;
    for (const auto& pl : players_) sets.push_back(pl.set);
    set_ = std::make_shared<const ProductSet>(manifold_, std::move(sets));
}

double Game::payoff(std::size_t i, const ManifoldPoint& p) const {
    manifold_->require_owned(p, "Game::payoff");
    const double v = players_.at(i).value(p);
    if (!std::isfinite(v)) throw NumericError("payoff of player '" + players_[i].name + "' is not finite");
    return v;
}

SubdifferentialValue Game::subdiff(std::size_t i, const ManifoldPoint& p) const {
    manifold_->require_owned(p, "Game::subdiff");
    SubdifferentialValue s = players_.at(i).subdiff(p);
    if (!same_point(s.base(), manifold_->component(p, i)))
        throw ContractViolation("oracle of player '" + players_[i].name + "' returned a subdifferential at the wrong point");
    return s;
}

SubdifferentialValue Game::diagonal(const ManifoldPoint& p) const {
    std::vector<SubdifferentialValue> parts;
    for (std::size_t i = 0; i < players_.size(); ++i) parts.push_back(subdiff(i, p));
    return diagonal_subdiff(*manifold_, p, parts);
}

TangentVector Game::selection(const ManifoldPoint& p, const std::vector<std::size_t>& choice) const {
    if (!choice.empty() && choice.size() != players_.size())
        throw ContractViolation("selection needs one generator index per player");
    std::vector<TangentVector> parts;
    for (std::size_t i = 0; i < players_.size(); ++i) {
        const SubdifferentialValue s = subdiff(i, p);
        const std::size_t k = choice.empty() ? 0 : choice[i];
        if (k >= s.size()) throw ContractViolation("selection index out of range");
        parts.push_back(s.generators()[k]);
    }
    return manifold_->combine(p, parts);
}

SubdifferentialValue diagonal_subdiff(const Game& game, const ManifoldPoint& p) { return game.diagonal(p); }

}  // namespace mnash
