#include "mnash/equilibria.hpp"

#include "mnash/errors.hpp"

#include <cmath>

namespace mnash {

void SolverConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("solver alpha must be positive");
    if (rho && !(*rho > 0.0 && *rho < 1.0)) throw InputError("solver rho must lie in (0, 1)");
    if (!(tol >= 0.0)) throw InputError("solver tol must be non-negative");
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("solver step h must be positive");
    if (!(t_end > 0.0)) throw InputError("solver t_end must be positive");
    if (record_every == 0) throw InputError("record_every must be at least 1");
}

std::string to_string(SolverStatus s) {
    switch (s) {
        case SolverStatus::Converged: return "Converged";
        case SolverStatus::MaxIterations: return "MaxIterations";
        case SolverStatus::NumericError: return "NumericError";
    }
    return "Unknown";
}

namespace {

bool finite_point(const ManifoldPoint& p) {
    for (double c : p.coords)
        if (!std::isfinite(c)) return false;
    return true;
}

/// A_α(P_K(p)) with the default selection.
ManifoldPoint step_map(const Game& game, double alpha, const ManifoldPoint& p) {
    return fixed_point_map(game, alpha, game.set().project(p));
}

void finalize(const Game& game, const SolverConfig& config, SolverReport& rep) {
    std::size_t inside = 0, counted = 0;
    for (std::size_t k = 1; k < rep.trace.size(); ++k) {
        ++counted;
        if (rep.trace[k].in_set) ++inside;
    }
    rep.viability = counted == 0 ? 1.0 : static_cast<double>(inside) / static_cast<double>(counted);
    if (rep.status != SolverStatus::NumericError && game.set().contains(rep.final_point)) {
        CheckOptions opt;
        opt.samples = config.vi_samples;
        opt.seed = config.seed;
        opt.tol = std::max(1e-8, 10.0 * config.tol);
        const EquilibriumCheck c = is_nash_stampacchia(game, rep.final_point, opt);
        rep.certificate_checked = true;
        rep.certificate_pass = c.pass;
        rep.certificate_worst = c.worst;
    }
}

}  // namespace

SolverReport solve_dds(const Game& game, const SolverConfig& config, const ManifoldPoint& p0,
                       const std::optional<ManifoldPoint>& reference) {
    config.validate();
    game.manifold().require_owned(p0, "solve_dds");
    SolverReport rep;
    rep.method = "dds";
    rep.start_in_set = game.set().contains(p0);
    const bool certify = config.rho && reference;
    const double rho = config.rho.value_or(0.0);

    ManifoldPoint p = p0;
    double first_step = 0.0;
    rep.status = SolverStatus::MaxIterations;
    for (std::size_t k = 0; k <= config.max_iter; ++k) {
        ManifoldPoint next;
        try {
            next = step_map(game, config.alpha, p);
        } catch (const NumericError& e) {
            rep.status = SolverStatus::NumericError;
            rep.message = e.what();
            break;
        }
        if (!finite_point(next)) {
            rep.status = SolverStatus::NumericError;
            rep.message = "non-finite iterate at k = " + std::to_string(k + 1);
            break;
        }
        ++rep.steps;
        const double r = game.manifold().distance(p, next);
        if (k == 0) first_step = r;

        TraceRow row;
        row.k_or_t = static_cast<double>(k);
        row.residual = r;
        row.in_set = game.set().contains(p);
        if (reference) row.dist_to_ref = game.manifold().distance(p, *reference);
        if (certify) {
            row.bound = std::pow(1.0 - rho, static_cast<double>(k)) / rho * first_step;
            ++rep.bound_checked;
            if (*row.dist_to_ref <= *row.bound + config.bound_tol) ++rep.bound_held;
        }
        rep.trace.push_back(row);
        rep.iterates.push_back(p);
        rep.final_point = next;
        rep.final_residual = r;
        if (r <= config.tol) {
            rep.status = SolverStatus::Converged;
            break;
        }
        if (k == config.max_iter) break;
        p = std::move(next);
    }
    if (rep.iterates.empty()) rep.final_point = p0;
    if (rep.status == SolverStatus::NumericError) rep.final_point = p;
    finalize(game, config, rep);
    return rep;
}

SolverReport solve_cds(const Game& game, const SolverConfig& config, const ManifoldPoint& p0,
                       const std::optional<ManifoldPoint>& reference) {
    config.validate();
    game.manifold().require_owned(p0, "solve_cds");
    const Manifold& m = game.manifold();
    SolverReport rep;
    rep.method = "cds";
    rep.start_in_set = game.set().contains(p0);
    const bool certify = config.rho && reference;
    const double rho = config.rho.value_or(0.0);
    const double d0 = reference ? m.distance(p0, *reference) : 0.0;
    const auto steps = static_cast<std::size_t>(std::ceil(config.t_end / config.h - 1e-9));

    ManifoldPoint eta = p0;
    rep.status = SolverStatus::MaxIterations;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * config.h;
        ManifoldPoint target;
        TangentVector drift;
        try {
            target = step_map(game, config.alpha, eta);
            drift = m.log(eta, target);
        } catch (const NumericError& e) {
            rep.status = SolverStatus::NumericError;
            rep.message = e.what();
            break;
        }
        ++rep.steps;
        const double r = m.norm(drift);
        if (!std::isfinite(r)) {
            rep.status = SolverStatus::NumericError;
            rep.message = "non-finite vector field at t = " + std::to_string(t);
            break;
        }
        const bool converged = r <= config.tol;
        const bool last = converged || k == steps;

        // The rate bound is checked at every step; only recorded samples go to the trace.
        std::optional<double> dist, bound;
        if (reference) dist = m.distance(eta, *reference);
        if (certify) {
            bound = std::exp(-rho * t) * d0;
            ++rep.bound_checked;
            if (*dist <= *bound + config.bound_tol) ++rep.bound_held;
        }
        if (k % config.record_every == 0 || last) {
            TraceRow row;
            row.k_or_t = t;
            row.residual = r;
            row.dist_to_ref = dist;
            row.bound = bound;
            row.in_set = game.set().contains(eta);
            rep.trace.push_back(row);
            rep.iterates.push_back(eta);
        }
        rep.final_point = eta;
        rep.final_residual = r;
        if (converged) {
            rep.status = SolverStatus::Converged;
            break;
        }
        if (k == steps) break;
        ManifoldPoint next = m.exp(eta, config.h * drift);
        if (!finite_point(next)) {
            rep.status = SolverStatus::NumericError;
            rep.message = "step blow-up at t = " + std::to_string(t + config.h);
            break;
        }
        eta = std::move(next);
    }
    finalize(game, config, rep);
    return rep;
}

}  // namespace mnash
