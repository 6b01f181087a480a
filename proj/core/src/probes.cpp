#include "mnash/equilibria.hpp"

#include "mnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mnash {

std::string to_string(HypothesisKind k) { return k == HypothesisKind::Coercivity ? "Coercivity" : "Contraction"; }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SupportsHypothesis: return "SupportsHypothesis";
        case Verdict::Violated: return "Violated";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

HypothesisReport contraction_probe(const Game& game, double alpha, double rho, std::size_t npairs,
                                   std::uint64_t seed) {
    if (!(alpha > 0.0)) throw InputError("contraction probe needs alpha > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw InputError("contraction probe needs 0 < rho < 1");
    const Manifold& m = game.manifold();
    HypothesisReport rep;
    rep.kind = HypothesisKind::Contraction;
    rep.threshold = 1.0 - rho;

    const auto pts = game.set().sample(2 * npairs, seed);
    auto step = [&](const ManifoldPoint& p) { return m.exp(p, -alpha * game.selection(p)); };
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<ManifoldPoint> witness;
    for (std::size_t j = 0; j < npairs; ++j) {
        const ManifoldPoint& p = pts[2 * j];
        const ManifoldPoint& q = pts[2 * j + 1];
        const double d = m.distance(p, q);
        if (d < 1e-12) continue;
        ++rep.samples;
        const double ratio = m.distance(step(p), step(q)) / d;
        if (ratio > worst) {
            worst = ratio;
            witness = {p, q};
        }
    }
    if (rep.samples == 0) {
        rep.verdict = Verdict::Inconclusive;
        rep.note = "no distinct pairs sampled";
        return rep;
    }
    rep.worst = worst;
    if (worst <= rep.threshold + 1e-9) {
        rep.verdict = Verdict::SupportsHypothesis;
    } else {
        rep.verdict = Verdict::Violated;
        rep.witness = std::move(witness);
    }
    return rep;
}

HypothesisReport coercivity_probe(const Game& game, const ManifoldPoint& p0, const CoercivityOptions& opt) {
    const Manifold& m = game.manifold();
    m.require_owned(p0, "coercivity_probe");
    if (!game.set().contains(p0)) throw ContractViolation("coercivity probe: p0 is outside the strategy set");
    if (opt.radii.empty()) throw InputError("coercivity probe needs at least one radius");
    for (std::size_t i = 1; i < opt.radii.size(); ++i)
        if (!(opt.radii[i] > opt.radii[i - 1])) throw InputError("coercivity radii must be increasing");

    HypothesisReport rep;
    rep.kind = HypothesisKind::Coercivity;
    rep.radii = opt.radii;
    const SubdifferentialValue d0 = game.diagonal(p0);
    if (opt.xi0_generator >= d0.size()) throw InputError("coercivity probe: xi0 generator index out of range");
    const TangentVector& xi0 = d0.generators()[opt.xi0_generator];
    const double xi0_norm = m.norm(xi0);
    rep.threshold = -xi0_norm;

    Rng rng = make_rng(opt.seed);
    std::vector<ManifoldPoint> last_witness;
    std::size_t skipped = 0;
    for (double r : opt.radii) {
        double best = -std::numeric_limits<double>::infinity();
        ManifoldPoint arg;
        std::size_t accepted = 0, attempts = 0;
        const std::size_t max_attempts = 100 * opt.samples_per_radius;
        while (accepted < opt.samples_per_radius && attempts < max_attempts) {
            ++attempts;
            ManifoldPoint p = m.exp(p0, r * m.random_unit_tangent(p0, rng));
            double ratio = 0.0;
            try {
                if (!game.set().contains(p)) continue;
                const double d = m.distance(p, p0);
                ratio = (game.diagonal(p).support(m, m.log(p, p0)) + m.inner(p0, xi0, m.log(p0, p))) / d;
            } catch (const Error&) {
                // Far out on a matrix factor the chart loses positive definiteness to rounding.
                ++skipped;
                continue;
            }
            if (!std::isfinite(ratio)) {
                ++skipped;
                continue;
            }
            ++accepted;
            if (ratio > best) {
                best = ratio;
                arg = std::move(p);
            }
        }
        rep.samples += accepted;
        if (accepted == 0) {
            rep.verdict = Verdict::Inconclusive;
            rep.note = "no feasible sample at radius " + std::to_string(r);
            return rep;
        }
        rep.trend.push_back(best);
        last_witness = {arg};
    }

    rep.worst = rep.trend.back();
    const std::string skipped_note =
        skipped == 0 ? "" : "; " + std::to_string(skipped) + " numerically degenerate samples skipped";
    bool decreasing = rep.trend.size() >= 3;
    for (std::size_t i = rep.trend.size() >= 3 ? rep.trend.size() - 2 : 1; i < rep.trend.size(); ++i)
        if (!(rep.trend[i] <= rep.trend[i - 1] - 0.1 * std::abs(rep.trend[i - 1]))) decreasing = false;

    if (rep.worst >= -xi0_norm) {
        rep.verdict = Verdict::Violated;
        rep.witness = std::move(last_witness);
        rep.note = "largest-radius maximum is not below -|xi0|" + skipped_note;
    } else if (rep.worst < -xi0_norm - opt.margin && decreasing) {
        rep.verdict = Verdict::SupportsHypothesis;
        rep.note = "finite-radius evidence only" + skipped_note;
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.note = (decreasing ? "maximum within the margin of -|xi0|" : "trend is not decreasing") + skipped_note;
    }
    return rep;
}

MonotoneConstants lipschitz_monotone_constants(double g2_inf, double g2_sup, double lip_h, double tr_a2, double c,
                                               std::size_t n) {
    if (!(g2_inf > 0.0) || !(g2_sup >= g2_inf) || !std::isfinite(g2_sup))
        throw DomainError("need 0 < inf g'' <= sup g'' < infinity");
    if (!(lip_h >= 0.0) || !(tr_a2 >= 0.0) || !(c > 0.0) || n == 0)
        throw DomainError("need L_h >= 0, tr(A^2) >= 0, c > 0 and n >= 1");
    const double nn = static_cast<double>(n);
    const double sa = std::sqrt(tr_a2);
    if (!(c + lip_h * sa < 2.0 * g2_inf))
        throw DomainError("constraint c + L_h*sqrt(tr(A^2)) < 2*inf g'' is violated");
    if (!(c * nn + 2.0 * lip_h * sa < 4.0))
        throw DomainError("constraint c*n + 2*L_h*sqrt(tr(A^2)) < 4 is violated");

    MonotoneConstants out;
    out.lipschitz = std::max(std::sqrt(2.0 * g2_sup + 8.0 * lip_h * tr_a2), std::sqrt(2.0 * c * c * nn + 8.0));
    out.kappa = std::min(g2_inf - c / 2.0 - lip_h * sa / 2.0, 1.0 - c * nn / 4.0 - lip_h * sa / 2.0);
    if (!(out.kappa > 0.0) || !(out.kappa <= out.lipschitz))
        throw DomainError("monotonicity constant must satisfy 0 < kappa <= L");
    const double l2 = out.lipschitz * out.lipschitz;
    out.alpha = out.kappa / l2;
    out.rho = out.kappa * out.kappa / (2.0 * l2);
    return out;
}

}  // namespace mnash
