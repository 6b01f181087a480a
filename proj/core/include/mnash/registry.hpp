#pragma once

#include "mnash/equilibria.hpp"
#include "mnash/verification.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mnash {

using ParamMap = std::map<std::string, double>;

// ---------------------------------------------------------------------------
// Game builders

/// Half-plane triangle × [−1, 1]; player 2's payoff has a kink at y = 0.
std::shared_ptr<const Game> halfplane_lens_game();

/// [0, 2] × {X ≻ 0 : tr ln²X ≤ 1 ≤ det X ≤ 2}, with constant coefficients g and h.
/// Requires h ≥ 2(n+1)g ≥ 0.
std::shared_ptr<const Game> det_band_game(std::size_t n, double g, double h);

/// [0, ∞) × {X ≻ 0 : tr X⁻¹ ≤ n}, with constant g > 0 and h.
std::shared_ptr<const Game> trace_inverse_game(std::size_t n, double g, double h);

struct TraceHalfSpaceParams {
    std::size_t n = 2;
    double c = 0.1;
    /// h(t) = lip_h · sin t.
    double lip_h = 0.1;
    /// g(t) = g2 · t² / 2.
    double g2 = 2.0;
    /// Row-major symmetric n×n; empty means the identity.
    Coords a;
};

/// [0, ∞) × {X symmetric : tr X ≥ 1} with the Euclidean trace metric.
std::shared_ptr<const Game> trace_halfspace_game(const TraceHalfSpaceParams& params);

/// Two players on [0, ∞) with f1 = f2 = e^{−x−y}; no equilibrium exists.
std::shared_ptr<const Game> decay_game();

/// Two players on [0, ∞) with identically zero payoffs.
std::shared_ptr<const Game> zero_game();

/// Root of j(t)·ln j(t) = h/(2g) on (0, √(n/3)) by bisection, with j(t) = (√(n/3)/t)^{2/(n+1)}.
double trace_inverse_root(std::size_t n, double g, double h, double tol = 1e-15);

// ---------------------------------------------------------------------------
// Registry

struct RegisteredGame {
    std::string key;
    std::string variant;
    ParamMap params;
    std::shared_ptr<const Game> game;
    /// Analytic equilibrium when one is known.
    std::optional<ManifoldPoint> reference;
    std::optional<MonotoneConstants> constants;
    /// Base point for the coercivity probe.
    ManifoldPoint probe_origin;
    /// NE = NS = NC is expected (convex payoffs in each player's own variable).
    bool full_equality = false;
    SolverConfig solver;
};

/// "6.1", "6.2", "6.3", "6.4", "decay", "zero".
std::vector<std::string> registry_keys();
std::vector<std::string> registry_variants(const std::string& key);

/// Throws ConfigError for unknown keys, variants or parameters and DomainError when a
/// parameter constraint of the game is violated.
RegisteredGame build_registered_game(const std::string& key, const std::string& variant = "",
                                     const ParamMap& params = {});

/// The registered game with strategy set `player` replaced.
RegisteredGame with_strategy_set(const RegisteredGame& base, std::size_t player, SetPtr set);

/// Known solution points, perturbations at distances 1e-3 and 1e-1, and random feasible points,
/// each labelled with the expected verdicts where the analytic solution set is known.
std::vector<Candidate> curated_candidates(const RegisteredGame& rg, std::uint64_t seed = 0);

}  // namespace mnash
