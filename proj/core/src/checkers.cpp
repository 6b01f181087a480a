#include "mnash/equilibria.hpp"

#include "mnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mnash {

namespace {

using linalg::Matrix;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_feasible(const Game& game, const ManifoldPoint& p, const char* op) {
    game.manifold().require_owned(p, op);
    if (!game.set().contains(p))
        throw ContractViolation(std::string(op) + ": profile is outside the strategy set (violation " +
                                std::to_string(game.set().violation(p)) + ")");
}

double min_row(const Matrix& a, const std::vector<double>& w) {
    double best = kInf;
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(j, k) * w[static_cast<std::size_t>(k)];
        best = std::min(best, s);
    }
    return best;
}

MaxMinResult max_min_two(const Matrix& a) {
    auto f = [&](double lam) { return min_row(a, {1.0 - lam, lam}); };
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    double best_lam = 0.5 * (lo + hi);
    double best = f(best_lam);
    for (double lam : {0.0, 1.0}) {
        const double v = f(lam);
        if (v > best) {
            best = v;
            best_lam = lam;
        }
    }
    return {best, {1.0 - best_lam, best_lam}};
}

/// Matrix-game LP: with B = A + shift > 0, solve max Σy s.t. Bᵀy ≤ 1, y ≥ 0 by the tableau
/// simplex method with Bland's rule and read the column player's strategy off the slack prices.
MaxMinResult max_min_simplex(const Matrix& a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    const double shift = 1.0 - a.minCoeff();
    const Matrix b = a.array() + shift;

    // Tableau: `cols` constraint rows, variables y (rows) then slacks (cols), rhs last.
    const Eigen::Index nvar = rows + cols;
    Matrix t = Matrix::Zero(cols + 1, nvar + 1);
    for (Eigen::Index k = 0; k < cols; ++k) {
        for (Eigen::Index j = 0; j < rows; ++j) t(k, j) = b(j, k);
        t(k, rows + k) = 1.0;
        t(k, nvar) = 1.0;
    }
    for (Eigen::Index j = 0; j < rows; ++j) t(cols, j) = -1.0;
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(cols));
    for (Eigen::Index k = 0; k < cols; ++k) basis[static_cast<std::size_t>(k)] = rows + k;

    const double eps = 1e-12;
    for (int iter = 0;; ++iter) {
        if (iter > 100000) throw NumericError("max-min simplex did not terminate");
        Eigen::Index enter = -1;
        for (Eigen::Index c = 0; c < nvar; ++c) {
            if (t(cols, c) < -eps) {
                enter = c;
                break;
            }
        }
        if (enter < 0) break;
        Eigen::Index leave = -1;
        double best_ratio = kInf;
        for (Eigen::Index r = 0; r < cols; ++r) {
            if (t(r, enter) <= eps) continue;
            const double ratio = t(r, nvar) / t(r, enter);
            if (ratio < best_ratio - eps ||
                (std::abs(ratio - best_ratio) <= eps && leave >= 0 &&
                 basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                best_ratio = ratio;
                leave = r;
            }
        }
        if (leave < 0) throw NumericError("max-min simplex found an unbounded direction");
        t.row(leave) /= t(leave, enter);
        for (Eigen::Index r = 0; r <= cols; ++r)
            if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
        basis[static_cast<std::size_t>(leave)] = enter;
    }

    std::vector<double> w(static_cast<std::size_t>(cols));
    double total = 0.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
        w[static_cast<std::size_t>(k)] = std::max(0.0, t(cols, rows + k));
        total += w[static_cast<std::size_t>(k)];
    }
    if (!(total > 0.0)) throw NumericError("max-min simplex returned a degenerate strategy");
    for (double& x : w) x /= total;
    return {min_row(a, w), w};
}

/// Deviation directions log_{p_i}(q) for the sampled q, skipping q = p_i.
std::vector<std::pair<TangentVector, const ManifoldPoint*>> directions(const Manifold& m, const ManifoldPoint& pi,
                                                                       const std::vector<ManifoldPoint>& qs) {
    std::vector<std::pair<TangentVector, const ManifoldPoint*>> out;
    for (const auto& q : qs) {
        if (same_point(q, pi)) continue;
        out.emplace_back(m.log(pi, q), &q);
    }
    return out;
}

void finish(EquilibriumCheck& out) {
    out.pass = std::all_of(out.players.begin(), out.players.end(), [](const PlayerVerdict& v) { return v.pass; });
    out.worst = kInf;
    for (const auto& v : out.players) out.worst = std::min(out.worst, v.worst);
}

}  // namespace

MaxMinResult max_min_mixture(const Matrix& a) {
    if (a.cols() < 1) throw ContractViolation("max_min_mixture: no generators");
    if (a.rows() == 0) {
        std::vector<double> w(static_cast<std::size_t>(a.cols()), 0.0);
        w[0] = 1.0;
        return {kInf, w};
    }
    if (a.cols() == 1) return {a.col(0).minCoeff(), {1.0}};
    if (a.cols() == 2) return max_min_two(a);
    return max_min_simplex(a);
}

std::vector<std::vector<ManifoldPoint>> deviation_samples(const Game& game, std::size_t count, std::uint64_t seed) {
    std::vector<std::vector<ManifoldPoint>> out;
    for (std::size_t i = 0; i < game.player_count(); ++i)
        out.push_back(game.strategy_set(i).sample(count, derive_seed(seed, i)));
    return out;
}

EquilibriumCheck is_nash_equilibrium(const Game& game, const ManifoldPoint& p, const CheckOptions& opt) {
    require_feasible(game, p, "is_nash_equilibrium");
    const auto samples = deviation_samples(game, opt.samples, opt.seed);
    EquilibriumCheck out;
    for (std::size_t i = 0; i < game.player_count(); ++i) {
        const double base = game.payoff(i, p);
        PlayerVerdict v;
        v.worst = kInf;
        const Manifold& m = game.factor(i);
        const ManifoldPoint pi = game.component(p, i);
        auto consider = [&](const ManifoldPoint& q) {
            const double gain = game.payoff(i, game.deviate(p, i, q)) - base;
            if (gain < v.worst) {
                v.worst = gain;
                v.witness = q;
            }
        };
        for (const auto& q : samples[i]) {
            consider(q);
            // Short steps toward the sample catch improvements that only exist near p.
            for (double s : {1e-4, 1e-3, 1e-2, 1e-1}) consider(m.geodesic(pi, q, s));
        }
        if (!std::isfinite(v.worst)) v.worst = 0.0;
        v.pass = v.worst >= -opt.tol;
        if (v.pass) v.witness.reset();
        out.players.push_back(std::move(v));
    }
    finish(out);
    return out;
}

EquilibriumCheck is_nash_stampacchia(const Game& game, const ManifoldPoint& p, const CheckOptions& opt) {
    require_feasible(game, p, "is_nash_stampacchia");
    const auto samples = deviation_samples(game, opt.samples, opt.seed);
    EquilibriumCheck out;
    for (std::size_t i = 0; i < game.player_count(); ++i) {
        const Manifold& m = game.factor(i);
        const ManifoldPoint pi = game.component(p, i);
        const SubdifferentialValue s = game.subdiff(i, p);
        const auto dirs = directions(m, pi, samples[i]);

        Matrix a(static_cast<Eigen::Index>(dirs.size()), static_cast<Eigen::Index>(s.size()));
        for (std::size_t j = 0; j < dirs.size(); ++j)
            for (std::size_t k = 0; k < s.size(); ++k)
                a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                    m.inner(pi, s.generators()[k], dirs[j].first);

        PlayerVerdict v;
        MaxMinResult best = max_min_mixture(a);
        if (s.size() == 2 && !dirs.empty()) {
            // Exact feasibility: each constraint a0 + λ(a1 − a0) ≥ −tol cuts [0, 1] to an interval.
            double lo = 0.0, hi = 1.0;
            for (Eigen::Index j = 0; j < a.rows(); ++j) {
                const double a0 = a(j, 0) + opt.tol, slope = a(j, 1) - a(j, 0);
                if (slope > 0.0) lo = std::max(lo, -a0 / slope);
                else if (slope < 0.0) hi = std::min(hi, -a0 / slope);
                else if (a0 < 0.0) hi = -1.0;
            }
            v.pass = lo <= hi;
            if (v.pass && best.value < -opt.tol) {
                const double lam = 0.5 * (lo + hi);
                best = {min_row(a, {1.0 - lam, lam}), {1.0 - lam, lam}};
            }
        } else {
            v.pass = best.value >= -opt.tol;
        }
        v.worst = std::isfinite(best.value) ? best.value : 0.0;
        v.certificate = best.weights;
        if (!v.pass) {
            double lowest = kInf;
            for (std::size_t j = 0; j < dirs.size(); ++j) {
                const double val = min_row(a.row(static_cast<Eigen::Index>(j)), best.weights);
                if (val < lowest) {
                    lowest = val;
                    v.witness = *dirs[j].second;
                }
            }
        }
        out.players.push_back(std::move(v));
    }
    finish(out);
    return out;
}

EquilibriumCheck is_nash_clarke(const Game& game, const ManifoldPoint& p, const CheckOptions& opt) {
    require_feasible(game, p, "is_nash_clarke");
    const auto samples = deviation_samples(game, opt.samples, opt.seed);
    EquilibriumCheck out;
    for (std::size_t i = 0; i < game.player_count(); ++i) {
        const Manifold& m = game.factor(i);
        const ManifoldPoint pi = game.component(p, i);
        auto slice = [&](const ManifoldPoint& q) { return game.payoff(i, game.deviate(p, i, q)); };
        PlayerVerdict v;
        v.worst = kInf;
        for (const auto& [d, q] : directions(m, pi, samples[i])) {
            const TangentVector u = (1.0 / m.norm(d)) * d;
            const double est = clarke_directional_estimate(m, slice, pi, u, opt.grid, derive_seed(opt.seed, 100 + i)).value;
            if (est < v.worst) {
                v.worst = est;
                v.witness = *q;
            }
        }
        if (!std::isfinite(v.worst)) v.worst = 0.0;
        v.pass = v.worst >= -opt.clarke_tol;
        if (v.pass) v.witness.reset();
        out.players.push_back(std::move(v));
    }
    finish(out);
    return out;
}

// ---------------------------------------------------------------------------
// Fixed-point map

ManifoldPoint fixed_point_map(const Game& game, double alpha, const ManifoldPoint& p,
                              const std::vector<std::size_t>& selection) {
    if (!(alpha > 0.0)) throw InputError("fixed-point map needs alpha > 0");
    const TangentVector xi = game.selection(p, selection);
    return game.set().project(game.manifold().exp(p, -alpha * xi));
}

FixedPointResidual fixed_point_residual(const Game& game, double alpha, const ManifoldPoint& p) {
    if (!(alpha > 0.0)) throw InputError("fixed-point residual needs alpha > 0");
    FixedPointResidual out;
    double total = 0.0;
    for (std::size_t i = 0; i < game.player_count(); ++i) {
        const Manifold& m = game.factor(i);
        const StrategySet& k = game.strategy_set(i);
        const ManifoldPoint pi = game.component(p, i);
        const SubdifferentialValue s = game.subdiff(i, p);
        auto displacement = [&](const std::vector<double>& w) {
            return m.distance(pi, k.project(m.exp(pi, -alpha * s.combination(w))));
        };

        std::vector<double> best_w(s.size(), 0.0);
        best_w[0] = 1.0;
        double best = displacement(best_w);
        auto consider = [&](const std::vector<double>& w) {
            const double d = displacement(w);
            if (d < best) {
                best = d;
                best_w = w;
            }
        };
        // Scan every hull edge, then refine the best point of each edge by golden section.
        for (std::size_t a = 0; a < s.size(); ++a) {
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                auto edge = [&](double lam) {
                    std::vector<double> w(s.size(), 0.0);
                    w[a] = 1.0 - lam;
                    w[b] = lam;
                    return w;
                };
                double lam_best = 0.0, val_best = kInf;
                for (int g = 0; g <= 100; ++g) {
                    const double lam = g / 100.0;
                    const double d = displacement(edge(lam));
                    if (d < val_best) {
                        val_best = d;
                        lam_best = lam;
                    }
                }
                double lo = std::max(0.0, lam_best - 0.01), hi = std::min(1.0, lam_best + 0.01);
                const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
                double c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
                double fc = displacement(edge(c)), fd = displacement(edge(d));
                for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                    if (fc < fd) {
                        hi = d;
                        d = c;
                        fd = fc;
                        c = hi - ratio * (hi - lo);
                        fc = displacement(edge(c));
                    } else {
                        lo = c;
                        c = d;
                        fc = fd;
                        d = lo + ratio * (hi - lo);
                        fd = displacement(edge(d));
                    }
                }
                consider(edge(lam_best));
                consider(edge(0.5 * (lo + hi)));
            }
            std::vector<double> vertex(s.size(), 0.0);
            vertex[a] = 1.0;
            consider(vertex);
        }
        out.per_player.push_back(best);
        out.weights.push_back(best_w);
        total += best * best;
    }
    out.residual = std::sqrt(total);
    return out;
}

}  // namespace mnash
