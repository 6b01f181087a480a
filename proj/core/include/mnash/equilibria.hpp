#pragma once

#include "mnash/game.hpp"
#include "mnash/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mnash {

// ---------------------------------------------------------------------------
// Membership checkers

struct CheckOptions {
    /// Deviation points drawn from each K_i.
    std::size_t samples = 200;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    /// Tolerance of the Clarke-derivative checker, applied to unit directions.
    double clarke_tol = 1e-6;
    ClarkeGrid grid{};
};

struct PlayerVerdict {
    bool pass = false;
    /// Equilibrium: min of f_i(q_i, p_−i) − f_i(p). Variational checks: best achievable min of the pairing.
    double worst = 0.0;
    std::optional<ManifoldPoint> witness;
    /// Hull weights of the certificate (variational inequality only).
    std::vector<double> certificate;
};

struct EquilibriumCheck {
    bool pass = false;
    double worst = 0.0;
    std::vector<PlayerVerdict> players;
};

/// Deviation samples per player, drawn with independent streams of `seed`.
std::vector<std::vector<ManifoldPoint>> deviation_samples(const Game& game, std::size_t count, std::uint64_t seed);

/// Deviations are the samples plus the points 1e-4, 1e-3, 1e-2 and 1e-1 of the way toward each.
EquilibriumCheck is_nash_equilibrium(const Game& game, const ManifoldPoint& p, const CheckOptions& opt = {});
EquilibriumCheck is_nash_stampacchia(const Game& game, const ManifoldPoint& p, const CheckOptions& opt = {});
EquilibriumCheck is_nash_clarke(const Game& game, const ManifoldPoint& p, const CheckOptions& opt = {});

struct MaxMinResult {
    double value = 0.0;
    std::vector<double> weights;
};

/// max over the simplex of min_j (A λ)_j. Rows are constraints, columns hull generators.
/// Uses a direct minimum for one column, a concave line search for two and a dense simplex
/// method beyond that.
MaxMinResult max_min_mixture(const linalg::Matrix& a);

// ---------------------------------------------------------------------------
// Fixed-point map

/// A_α(p) = P_K(exp_p(−α ξ)) for the selection ξ (one generator index per player; empty = first).
ManifoldPoint fixed_point_map(const Game& game, double alpha, const ManifoldPoint& p,
                              const std::vector<std::size_t>& selection = {});

struct FixedPointResidual {
    /// sqrt of the sum over players of the smallest squared displacement over the hull.
    double residual = 0.0;
    std::vector<double> per_player;
    std::vector<std::vector<double>> weights;
};

/// Distance from p to A_α(p), minimized over each player's subdifferential hull.
FixedPointResidual fixed_point_residual(const Game& game, double alpha, const ManifoldPoint& p);

// ---------------------------------------------------------------------------
// Solvers

struct SolverConfig {
    double alpha = 0.1;
    std::optional<double> rho;
    double tol = 1e-10;
    std::size_t max_iter = 500;
    double t_end = 100.0;
    double h = 0.01;
    /// Continuous solver keeps one sample every this many steps (the last step is always kept).
    std::size_t record_every = 1;
    std::uint64_t seed = 0;
    std::size_t vi_samples = 200;
    /// Slack added to the rate bound.
    double bound_tol = 1e-9;

    void validate() const;
};

enum class SolverStatus { Converged, MaxIterations, NumericError };
std::string to_string(SolverStatus s);

struct TraceRow {
    double k_or_t = 0.0;
    double residual = 0.0;
    std::optional<double> dist_to_ref;
    std::optional<double> bound;
    bool in_set = false;
};

struct SolverReport {
    std::string method;
    SolverStatus status = SolverStatus::MaxIterations;
    std::string message;
    /// Evaluations of the fixed-point map.
    std::size_t steps = 0;
    /// Recorded iterates, one per trace row.
    std::vector<ManifoldPoint> iterates;
    std::vector<TraceRow> trace;
    ManifoldPoint final_point;
    double final_residual = 0.0;
    bool start_in_set = false;
    /// Fraction of iterates after the start that lie in K.
    double viability = 0.0;
    /// Rows where the rate bound was evaluated and held, out of those evaluated.
    std::size_t bound_checked = 0;
    std::size_t bound_held = 0;
    bool certificate_checked = false;
    bool certificate_pass = false;
    double certificate_worst = 0.0;

    double bound_fraction() const {
        return bound_checked == 0 ? 1.0 : static_cast<double>(bound_held) / static_cast<double>(bound_checked);
    }
};

/// p_{k+1} = A_α(P_K(p_k)); stops once d(p_k, p_{k+1}) ≤ tol.
SolverReport solve_dds(const Game& game, const SolverConfig& config, const ManifoldPoint& p0,
                       const std::optional<ManifoldPoint>& reference = std::nullopt);

/// Geometric explicit Euler on η̇ = log_η(A_α(P_K(η))).
SolverReport solve_cds(const Game& game, const SolverConfig& config, const ManifoldPoint& p0,
                       const std::optional<ManifoldPoint>& reference = std::nullopt);

// ---------------------------------------------------------------------------
// Hypothesis probes

enum class HypothesisKind { Coercivity, Contraction };
enum class Verdict { SupportsHypothesis, Violated, Inconclusive };
std::string to_string(HypothesisKind k);
std::string to_string(Verdict v);

struct HypothesisReport {
    HypothesisKind kind = HypothesisKind::Contraction;
    std::size_t samples = 0;
    /// Contraction: the largest ratio. Coercivity: the maximum at the largest radius.
    double worst = 0.0;
    /// Coercivity: per-radius maxima.
    std::vector<double> trend;
    std::vector<double> radii;
    /// Value the worst entry is compared against.
    double threshold = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::vector<ManifoldPoint>> witness;
    std::string note;
};

HypothesisReport contraction_probe(const Game& game, double alpha, double rho, std::size_t npairs,
                                   std::uint64_t seed);

struct CoercivityOptions {
    std::vector<double> radii{5.0, 10.0, 20.0, 40.0};
    std::size_t samples_per_radius = 200;
    std::uint64_t seed = 0;
    double margin = 0.0;
    /// Generator of ∂^Δ f(p0) used as ξ0.
    std::size_t xi0_generator = 0;
};

HypothesisReport coercivity_probe(const Game& game, const ManifoldPoint& p0, const CoercivityOptions& opt = {});

struct MonotoneConstants {
    double lipschitz = 0.0;
    double kappa = 0.0;
    double alpha = 0.0;
    double rho = 0.0;
};

/// Lipschitz and strong-monotonicity constants of the trace-half-space game and the derived
/// step (α = κ/L²) and contraction margin (ρ = κ²/(2L²)).
MonotoneConstants lipschitz_monotone_constants(double g2_inf, double g2_sup, double lip_h, double tr_a2, double c,
                                               std::size_t n);

}  // namespace mnash
