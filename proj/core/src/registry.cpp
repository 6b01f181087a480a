#include "mnash/registry.hpp"

#include "mnash/errors.hpp"
#include "mnash/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mnash {

namespace {

using linalg::Matrix;

/// Coordinates of one player's slot, tagged with its factor's id.
ManifoldPoint slot(const ManifoldPoint& profile, const Manifold& factor, std::size_t offset) {
    const auto first = profile.coords.begin() + static_cast<std::ptrdiff_t>(offset);
    return ManifoldPoint{Coords(first, first + static_cast<std::ptrdiff_t>(factor.coord_size())), factor.id()};
}

Matrix as_matrix(const ManifoldPoint& p) {
    return linalg::from_flat(p.coords, linalg::order_from_size(p.coords.size()));
}

Matrix eye(std::size_t n) {
    return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ManifoldPoint scalar_point(double t) { return ManifoldPoint{{t}, EuclideanSpace::vectors(1)->id()}; }

TangentVector scalar_tangent(const ManifoldPoint& base, double d) { return TangentVector{base, {d}}; }

/// Euclidean gradient in the flat chart, mapped to the Riemannian gradient of the factor.
SubdifferentialValue matrix_gradient(const Manifold& m, const ManifoldPoint& x, const Matrix& egrad) {
    const Coords flat = linalg::to_flat(linalg::symmetrize(egrad));
    return SubdifferentialValue::singleton(m.egrad_to_rgrad(x, flat));
}

double require_param(const ParamMap& params, const std::string& name, double fallback) {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

std::size_t order_param(const ParamMap& params, double fallback) {
    const double n = require_param(params, "n", fallback);
    if (!(n >= 1.0) || n != std::floor(n) || n > 16.0) throw ConfigError("parameter n must be an integer in [1, 16]");
    return static_cast<std::size_t>(n);
}

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> known, const std::string& key) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [name, value] : params) {
        if (!allowed.count(name)) throw ConfigError("example " + key + " has no parameter '" + name + "'");
        if (!std::isfinite(value)) throw ConfigError("parameter '" + name + "' is not finite");
    }
}

Matrix half_space_matrix(const TraceHalfSpaceParams& p) {
    if (p.a.empty()) return eye(p.n);
    if (p.a.size() != p.n * p.n || !linalg::is_symmetric(p.a, p.n))
        throw DomainError("matrix A must be symmetric of order n");
    return linalg::from_flat(p.a, p.n);
}

/// Fixed point of t = max(0, c·tr X(t)/g2) with X(t) the projection of h(t)A onto {tr X ≥ 1}.
ManifoldPoint trace_halfspace_reference(const TraceHalfSpaceParams& p, const Matrix& a, const Manifold& product,
                                        const Manifold& sym) {
    const double nn = static_cast<double>(p.n);
    auto best_x = [&](double t) {
        const double h = p.lip_h * std::sin(t);
        return Matrix(h * a + std::max(0.0, (1.0 - h * a.trace()) / nn) * eye(p.n));
    };
    double t = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double next = std::max(0.0, p.c * best_x(t).trace() / p.g2);
        const bool done = std::abs(next - t) <= 1e-16 * (1.0 + std::abs(t));
        t = next;
        if (done) break;
    }
    const ManifoldPoint x{linalg::to_flat(best_x(t)), sym.id()};
    Coords coords{t};
    coords.insert(coords.end(), x.coords.begin(), x.coords.end());
    return ManifoldPoint{coords, product.id()};
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

std::shared_ptr<const Game> halfplane_lens_game() {
    auto plane = PoincareHalfPlane::make();
    auto k1 = std::make_shared<const HalfPlaneAnnulus>(plane);
    auto k2 = BoxSet::interval(-1.0, 1.0);

    auto unpack = [plane](const ManifoldPoint& p) {
        return std::make_pair(slot(p, *plane, 0), p.coords.at(2));
    };

    Player first{"x", k1,
                 [unpack](const ManifoldPoint& p) {
                     const auto [x, y] = unpack(p);
                     const double x1 = x.coords[0], x2 = x.coords[1];
                     return y * (x1 * x1 * x1 + y * std::pow(1.0 - x2, 3));
                 },
                 [unpack](const ManifoldPoint& p) {
                     const auto [x, y] = unpack(p);
                     const double x1 = x.coords[0], x2 = x.coords[1];
                     const double s = 3.0 * y * x2 * x2;
                     return SubdifferentialValue::singleton(
                         TangentVector{x, {s * x1 * x1, -s * y * (1.0 - x2) * (1.0 - x2)}});
                 }};
    Player second{"y", k2,
                  [unpack](const ManifoldPoint& p) {
                      const auto [x, y] = unpack(p);
                      return -y * y * x.coords[1] + 4.0 * std::abs(y) * (x.coords[0] + 1.0);
                  },
                  [unpack](const ManifoldPoint& p) {
                      const auto [x, y] = unpack(p);
                      const ManifoldPoint base = scalar_point(y);
                      const double kink = 4.0 * (x.coords[0] + 1.0);
                      const double smooth = -2.0 * y * x.coords[1];
                      if (y == 0.0)
                          return SubdifferentialValue(base, {scalar_tangent(base, -kink), scalar_tangent(base, kink)});
                      return SubdifferentialValue::singleton(scalar_tangent(base, smooth + (y > 0 ? kink : -kink)));
                  }};
    return std::make_shared<const Game>("halfplane-lens", std::vector<Player>{first, second});
}

std::shared_ptr<const Game> det_band_game(std::size_t n, double g, double h) {
    if (n < 2) throw DomainError("det-band game needs n >= 2");
    if (!(g >= 0.0) || !(h >= 2.0 * static_cast<double>(n + 1) * g))
        throw DomainError("coefficients must satisfy h >= 2(n+1)g >= 0");
    auto spd = SPDManifold::make(n);
    auto k1 = BoxSet::interval(0.0, 2.0);
    auto k2 = std::make_shared<const DetBandBall>(spd, 1.0, 1.0, 2.0);
    const double nn = static_cast<double>(n);

    Player first{"t", k1,
                 [spd, nn](const ManifoldPoint& p) {
                     const double t = p.coords[0];
                     const Matrix x = as_matrix(slot(p, *spd, 1));
                     const double tr = x.trace();
                     return std::pow(std::max(t, 1.0), nn - 1.0) * tr * tr -
                            4.0 * nn * std::log(t + 1.0) * linalg::elementary_symmetric2(x);
                 },
                 [spd, nn](const ManifoldPoint& p) {
                     const double t = p.coords[0];
                     const Matrix x = as_matrix(slot(p, *spd, 1));
                     const double tr2 = x.trace() * x.trace();
                     const double log_part = -4.0 * nn * linalg::elementary_symmetric2(x) / (t + 1.0);
                     const ManifoldPoint base = scalar_point(t);
                     if (t == 1.0)
                         return SubdifferentialValue(base, {scalar_tangent(base, log_part),
                                                            scalar_tangent(base, log_part + (nn - 1.0) * tr2)});
                     const double power = t < 1.0 ? 0.0 : (nn - 1.0) * std::pow(t, nn - 2.0) * tr2;
                     return SubdifferentialValue::singleton(scalar_tangent(base, log_part + power));
                 }};
    Player second{"X", k2,
                  [spd, g, h](const ManifoldPoint& p) {
                      const double t = p.coords[0];
                      const Matrix x = as_matrix(slot(p, *spd, 1));
                      const double w = x.inverse().trace() + 1.0;
                      return g * std::pow(w, t + 1.0) + h * std::log(x.determinant());
                  },
                  [spd, g, h](const ManifoldPoint& p) {
                      const double t = p.coords[0];
                      const ManifoldPoint xp = slot(p, *spd, 1);
                      const Matrix inv = as_matrix(xp).inverse();
                      const double w = inv.trace() + 1.0;
                      const Matrix egrad = -g * (t + 1.0) * std::pow(w, t) * inv * inv + h * inv;
                      return matrix_gradient(*spd, xp, egrad);
                  }};
    return std::make_shared<const Game>("det-band", std::vector<Player>{first, second});
}

std::shared_ptr<const Game> trace_inverse_game(std::size_t n, double g, double h) {
    if (n < 1) throw DomainError("trace-inverse game needs n >= 1");
    if (!(g > 0.0)) throw DomainError("coefficient g must be positive");
    auto spd = SPDManifold::make(n);
    auto k1 = BoxSet::half_line(0.0);
    auto k2 = std::make_shared<const TraceInvSublevel>(spd, static_cast<double>(n));

    Player first{"t", k1,
                 [spd](const ManifoldPoint& p) {
                     const double t = p.coords[0];
                     const Matrix x = as_matrix(slot(p, *spd, 1));
                     return t * t * t * x.determinant() - (t - 1.0) * x.inverse().trace();
                 },
                 [spd](const ManifoldPoint& p) {
                     const double t = p.coords[0];
                     const Matrix x = as_matrix(slot(p, *spd, 1));
                     return SubdifferentialValue::singleton(
                         scalar_tangent(scalar_point(t), 3.0 * t * t * x.determinant() - x.inverse().trace()));
                 }};
    Player second{"X", k2,
                  [spd, g, h](const ManifoldPoint& p) {
                      const Matrix x = as_matrix(slot(p, *spd, 1));
                      const Matrix l = linalg::spd_fun(x, linalg::MatrixFunction::Log);
                      return g * (l * l).trace() + h * x.inverse().trace();
                  },
                  [spd, g, h](const ManifoldPoint& p) {
                      const ManifoldPoint xp = slot(p, *spd, 1);
                      const Matrix x = as_matrix(xp);
                      const Matrix inv = x.inverse();
                      const Matrix egrad = 2.0 * g * inv * linalg::spd_fun(x, linalg::MatrixFunction::Log) - h * inv * inv;
                      return matrix_gradient(*spd, xp, egrad);
                  }};
    return std::make_shared<const Game>("trace-inverse", std::vector<Player>{first, second});
}

std::shared_ptr<const Game> trace_halfspace_game(const TraceHalfSpaceParams& params) {
    if (params.n < 1) throw DomainError("trace half-space game needs n >= 1");
    const Matrix a = half_space_matrix(params);
    const double c = params.c, lip_h = params.lip_h, g2 = params.g2;
    auto sym = EuclideanSpace::symmetric_matrices(params.n);
    auto k1 = BoxSet::half_line(0.0);
    auto k2 = std::make_shared<const TraceHalfSpace>(sym, 1.0);

    Player first{"t", k1,
                 [sym, c, g2](const ManifoldPoint& p) {
                     const double t = p.coords[0];
                     return 0.5 * g2 * t * t - c * t * as_matrix(slot(p, *sym, 1)).trace();
                 },
                 [sym, c, g2](const ManifoldPoint& p) {
                     const double t = p.coords[0];
                     return SubdifferentialValue::singleton(
                         scalar_tangent(scalar_point(t), g2 * t - c * as_matrix(slot(p, *sym, 1)).trace()));
                 }};
    Player second{"X", k2,
                  [sym, a, lip_h](const ManifoldPoint& p) {
                      const Matrix d = as_matrix(slot(p, *sym, 1)) - lip_h * std::sin(p.coords[0]) * a;
                      return (d * d).trace();
                  },
                  [sym, a, lip_h](const ManifoldPoint& p) {
                      const ManifoldPoint xp = slot(p, *sym, 1);
                      const Matrix d = as_matrix(xp) - lip_h * std::sin(p.coords[0]) * a;
                      return matrix_gradient(*sym, xp, 2.0 * d);
                  }};
    return std::make_shared<const Game>("trace-halfspace", std::vector<Player>{first, second});
}

std::shared_ptr<const Game> decay_game() {
    auto value = [](const ManifoldPoint& p) { return std::exp(-p.coords[0] - p.coords[1]); };
    auto grad = [](std::size_t i) {
        return [i](const ManifoldPoint& p) {
            return SubdifferentialValue::singleton(
                scalar_tangent(scalar_point(p.coords[i]), -std::exp(-p.coords[0] - p.coords[1])));
        };
    };
    Player first{"x", BoxSet::half_line(0.0), value, grad(0)};
    Player second{"y", BoxSet::half_line(0.0), value, grad(1)};
    return std::make_shared<const Game>("decay", std::vector<Player>{first, second});
}

std::shared_ptr<const Game> zero_game() {
    auto value = [](const ManifoldPoint&) { return 0.0; };
    auto grad = [](std::size_t i) {
        return [i](const ManifoldPoint& p) {
            return SubdifferentialValue::singleton(scalar_tangent(scalar_point(p.coords[i]), 0.0));
        };
    };
    Player first{"x", BoxSet::half_line(0.0), value, grad(0)};
    Player second{"y", BoxSet::half_line(0.0), value, grad(1)};
    return std::make_shared<const Game>("zero", std::vector<Player>{first, second});
}

double trace_inverse_root(std::size_t n, double g, double h, double tol) {
    if (n < 1 || !(g > 0.0) || !(h > 0.0)) throw DomainError("root needs n >= 1, g > 0 and h > 0");
    const double nn = static_cast<double>(n);
    const double top = std::sqrt(nn / 3.0);
    const double target = h / (2.0 * g);
    auto excess = [&](double t) {
        const double j = std::pow(top / t, 2.0 / (nn + 1.0));
        return j * std::log(j) - target;
    };
    // excess decreases from +inf at 0 to −target at top.
    double lo = 0.0, hi = top;
    for (int k = 0; k < 400 && hi - lo > tol; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Registry

std::vector<std::string> registry_keys() { return {"6.1", "6.2", "6.3", "6.4", "decay", "zero"}; }

std::vector<std::string> registry_variants(const std::string& key) {
    if (key == "6.2") return {"d1", "d2", "d3"};
    if (key == "6.3") return {"a", "b"};
    return {""};
}

RegisteredGame build_registered_game(const std::string& key, const std::string& variant_in, const ParamMap& params) {
    const auto keys = registry_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown example '" + key + "'");
    const auto variants = registry_variants(key);
    std::string variant = variant_in;
    if (variant.empty()) variant = variants.back();
    if (std::find(variants.begin(), variants.end(), variant) == variants.end())
        throw ConfigError("example " + key + " has no variant '" + variant + "'");

    RegisteredGame rg;
    rg.key = key;
    rg.variant = variant;
    rg.params = params;

    if (key == "6.1") {
        reject_unknown(params, {}, key);
        rg.game = halfplane_lens_game();
        rg.full_equality = false;
    } else if (key == "6.2") {
        reject_unknown(params, {"n", "g", "h"}, key);
        const std::size_t n = order_param(params, 2.0);
        double g = 1.0, h = 6.0;
        if (variant == "d1") g = h = 0.0;
        if (variant == "d2") g = 0.0, h = 1.0;
        g = require_param(params, "g", g);
        h = require_param(params, "h", h);
        if (variant == "d1" && (g != 0.0 || h != 0.0)) throw ConfigError("variant d1 fixes g = h = 0");
        if (variant == "d2" && (g != 0.0 || !(h > 0.0))) throw ConfigError("variant d2 needs g = 0 and h > 0");
        if (variant == "d3" && !(g > 0.0)) throw ConfigError("variant d3 needs g > 0");
        rg.game = det_band_game(n, g, h);
        rg.full_equality = true;
        if (variant == "d3") {
            auto spd = SPDManifold::make(n);
            rg.reference = rg.game->profile({scalar_point(1.0), spd->identity()});
        }
    } else if (key == "6.3") {
        reject_unknown(params, {"n", "g", "h"}, key);
        const std::size_t n = order_param(params, 2.0);
        const double g = require_param(params, "g", 1.0);
        const double h = require_param(params, "h", variant == "a" ? -1.0 : 1.0);
        if (variant == "a" && !(h < 0.0)) throw ConfigError("variant a needs h < 0");
        if (variant == "b" && !(h > 0.0)) throw ConfigError("variant b needs h > 0");
        rg.game = trace_inverse_game(n, g, h);
        auto spd = SPDManifold::make(n);
        const double nn = static_cast<double>(n);
        if (variant == "a") {
            rg.reference = rg.game->profile({scalar_point(std::sqrt(nn / 3.0)), spd->identity()});
        } else {
            const double t = trace_inverse_root(n, g, h);
            const double j = std::pow(std::sqrt(nn / 3.0) / t, 2.0 / (nn + 1.0));
            rg.reference = rg.game->profile({scalar_point(t), ManifoldPoint{linalg::to_flat(j * eye(n)), spd->id()}});
        }
        rg.probe_origin = rg.game->profile({scalar_point(0.0), spd->identity()});
    } else if (key == "6.4") {
        reject_unknown(params, {"n", "c", "Lh", "g2", "a"}, key);
        TraceHalfSpaceParams p;
        p.n = order_param(params, 2.0);
        p.c = require_param(params, "c", 0.1);
        p.lip_h = require_param(params, "Lh", 0.1);
        p.g2 = require_param(params, "g2", 2.0);
        const double scale = require_param(params, "a", 1.0);
        p.a = linalg::to_flat(scale * eye(p.n));
        rg.game = trace_halfspace_game(p);
        const Matrix a = half_space_matrix(p);
        rg.constants = lipschitz_monotone_constants(p.g2, p.g2, p.lip_h, (a * a).trace(), p.c, p.n);
        rg.reference = trace_halfspace_reference(p, a, rg.game->manifold(), rg.game->factor(1));
        rg.full_equality = true;
        rg.solver.alpha = rg.constants->alpha;
        rg.solver.rho = rg.constants->rho;
        rg.solver.tol = 1e-12;
        rg.solver.max_iter = 2000;
        rg.solver.h = 0.01;
        rg.solver.t_end = 200.0 / rg.constants->rho;
        rg.solver.record_every = 100;
    } else if (key == "decay") {
        reject_unknown(params, {}, key);
        rg.game = decay_game();
        rg.full_equality = true;
        rg.probe_origin = rg.game->profile({scalar_point(0.0), scalar_point(0.0)});
    } else {
        reject_unknown(params, {}, key);
        rg.game = zero_game();
        rg.full_equality = true;
        rg.reference = rg.game->profile({scalar_point(0.0), scalar_point(0.0)});
    }
    if (rg.probe_origin.coords.empty()) rg.probe_origin = rg.game->set().anchor();
    return rg;
}

RegisteredGame with_strategy_set(const RegisteredGame& base, std::size_t player, SetPtr set) {
    if (player >= base.game->player_count())
        throw ConfigError("set override names player " + std::to_string(player) + ", the game has " +
                          std::to_string(base.game->player_count()));
    if (!set || set->manifold().id() != base.game->factor(player).id())
        throw ConfigError("set override for player " + std::to_string(player) + " lives on the wrong manifold");
    std::vector<Player> players;
    for (std::size_t i = 0; i < base.game->player_count(); ++i) players.push_back(base.game->player(i));
    players[player].set = std::move(set);
    RegisteredGame out = base;
    out.game = std::make_shared<const Game>(base.game->name(), std::move(players));
    if (out.reference && !out.game->set().contains(*out.reference)) out.reference.reset();
    if (!out.game->set().contains(out.probe_origin)) out.probe_origin = out.game->set().anchor();
    out.full_equality = base.full_equality;
    return out;
}

// ---------------------------------------------------------------------------
// Curated grids

std::vector<Candidate> curated_candidates(const RegisteredGame& rg, std::uint64_t seed) {
    const Game& game = *rg.game;
    std::vector<Candidate> out;
    auto add = [&](std::string label, ManifoldPoint p, std::optional<bool> ne, std::optional<bool> ns) {
        out.push_back(Candidate{std::move(label), std::move(p), ne, ns});
    };
    auto pair = [&](Coords first, Coords second) {
        Coords c = std::move(first);
        c.insert(c.end(), second.begin(), second.end());
        return game.manifold().point(std::move(c));
    };
    auto random_profiles = [&](std::size_t count, std::uint64_t stream) { return game.set().sample(count, derive_seed(seed, stream)); };

    if (rg.key == "6.1") {
        const double r3 = std::sqrt(3.0);
        const Coords vertex{0.5, std::sqrt(15.0) / 2.0};
        add("(0.2,1.9),0", pair({0.2, 1.9}, {0.0}), true, true);
        add("(0,sqrt3),0", pair({0.0, r3}, {0.0}), true, true);
        add("(0,2),0", pair({0.0, 2.0}, {0.0}), true, true);
        add("vertex,0", pair(vertex, {0.0}), true, true);
        add("(0,2),1", pair({0.0, 2.0}, {1.0}), false, true);
        add("(0,2),-1", pair({0.0, 2.0}, {-1.0}), false, true);
        add("(0.2,1.9),0.5", pair({0.2, 1.9}, {0.5}), false, false);
        add("(0.2,1.9),-0.5", pair({0.2, 1.9}, {-0.5}), false, false);
        add("(0,2),0.999", pair({0.0, 2.0}, {0.999}), false, false);
        add("(0,2),0.9", pair({0.0, 2.0}, {0.9}), false, false);
        add("(0.2,1.9),0.001", pair({0.2, 1.9}, {1e-3}), false, false);
        add("(0.2,1.9),0.1", pair({0.2, 1.9}, {0.1}), false, false);
        const auto xs = game.strategy_set(0).sample(8, derive_seed(seed, 1));
        const double ys[] = {0.3, -0.7, 0.05, -0.2};
        for (std::size_t k = 0; k < xs.size(); ++k) {
            add("random x" + std::to_string(k) + ",0", pair(xs[k].coords, {0.0}), true, true);
            // Away from (0, 2) the only NS strategy of player 2 is y = 0.
            if (std::abs(xs[k].coords[0]) + std::abs(xs[k].coords[1] - 2.0) > 1e-6)
                add("random x" + std::to_string(k) + ",y", pair(xs[k].coords, {ys[k % 4]}), false, false);
        }
    } else if (rg.key == "6.2") {
        const std::size_t n = linalg::order_from_size(game.factor(1).coord_size());
        auto diag = [&](std::vector<double> d) {
            Matrix x = eye(n);
            for (std::size_t k = 0; k < d.size(); ++k) x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
            return linalg::to_flat(x);
        };
        auto rotated = [&](double a, double angle) {
            Matrix x = eye(n);
            x(0, 0) = a;
            x(1, 1) = 1.0 / a;
            Matrix r = eye(n);
            r(0, 0) = r(1, 1) = std::cos(angle);
            r(0, 1) = -std::sin(angle);
            r(1, 0) = std::sin(angle);
            return linalg::to_flat(linalg::symmetrize(r * x * r.transpose()));
        };
        const bool d1 = rg.variant == "d1", d2 = rg.variant == "d2";
        // Unit-determinant points inside the log-ball.
        add("(1,I)", pair({1.0}, diag({})), true, true);
        add("(1,diag(1.5,1/1.5))", pair({1.0}, diag({1.5, 1.0 / 1.5})), d1 || d2 ? std::optional<bool>(true) : std::nullopt,
            d1 || d2 ? std::optional<bool>(true) : std::nullopt);
        add("(1,rot(1.4))", pair({1.0}, rotated(1.4, 0.6)), d1 || d2 ? std::optional<bool>(true) : std::nullopt,
            d1 || d2 ? std::optional<bool>(true) : std::nullopt);
        add("(1,rot(0.7))", pair({1.0}, rotated(0.7, 1.1)), d1 || d2 ? std::optional<bool>(true) : std::nullopt,
            d1 || d2 ? std::optional<bool>(true) : std::nullopt);
        // Determinant above 1.
        const std::optional<bool> upper = d1 ? std::optional<bool>(true) : std::optional<bool>(false);
        add("(1,diag(1.5,1))", pair({1.0}, diag({1.5})), upper, upper);
        add("(1,diag(1.001,1))", pair({1.0}, diag({1.001})), upper, upper);
        add("(1,diag(2,1))", pair({1.0}, diag({2.0})), upper, upper);
        add("(1,1.2I)", pair({1.0}, linalg::to_flat(std::pow(1.44, 1.0 / static_cast<double>(n)) * eye(n))), upper, upper);
        // Wrong first coordinate.
        add("(0.999,I)", pair({0.999}, diag({})), false, false);
        add("(0.9,I)", pair({0.9}, diag({})), false, false);
        add("(1.1,I)", pair({1.1}, diag({})), false, false);
        add("(0,I)", pair({0.0}, diag({})), false, false);
        add("(2,diag(2,1))", pair({2.0}, diag({2.0})), false, false);
        for (const auto& p : random_profiles(6, 2)) {
            const bool t_one = p.coords[0] == 1.0;
            add("random", p, t_one ? std::nullopt : std::optional<bool>(false),
                t_one ? std::nullopt : std::optional<bool>(false));
        }
    } else if (rg.key == "6.3") {
        const std::size_t n = linalg::order_from_size(game.factor(1).coord_size());
        const ManifoldPoint ref = *rg.reference;
        const double t = ref.coords[0];
        const Coords x(ref.coords.begin() + 1, ref.coords.end());
        Coords scaled = x;
        for (double& v : scaled) v *= 1.1;
        add("reference", ref, true, true);
        add("t+1e-3", pair({t + 1e-3}, x), false, false);
        add("t-1e-1", pair({t - 1e-1}, x), false, false);
        add("t,1.1X", pair({t}, scaled), false, false);
        add("0.5,I", pair({0.5}, linalg::to_flat(eye(n))), false, false);
        add("0,I", pair({0.0}, linalg::to_flat(eye(n))), false, false);
        for (const auto& p : random_profiles(6, 3)) add("random", p, false, false);
    } else if (rg.key == "6.4") {
        const ManifoldPoint ref = *rg.reference;
        add("reference", ref, true, true);
        for (double d : {1e-3, 1e-1}) {
            Coords shifted_t = ref.coords;
            shifted_t[0] += d;
            add("t+" + std::to_string(d), game.manifold().point(shifted_t), false, false);
            Coords shifted_x = ref.coords;
            shifted_x[1] += d;
            shifted_x.back() -= d;
            add("X+" + std::to_string(d), game.manifold().point(shifted_x), false, false);
        }
        for (const auto& p : random_profiles(6, 4)) add("random", p, false, false);
    } else if (rg.key == "decay") {
        // Every player can still lower e^{-x-y} by moving right; points stay inside the sampling window.
        const double pts[][2] = {{0.0, 0.0}, {0.5, 0.1}, {1.0, 2.0}, {3.0, 0.0}, {0.0, 2.5}, {1.5, 1.5}};
        for (const auto& xy : pts)
            add("(" + std::to_string(xy[0]) + "," + std::to_string(xy[1]) + ")", pair({xy[0]}, {xy[1]}), false, false);
    } else {
        for (const auto& p : random_profiles(8, 6)) add("random", p, true, true);
    }
    return out;
}

}  // namespace mnash
