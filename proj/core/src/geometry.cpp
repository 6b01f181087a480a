#include "mnash/geometry.hpp"

#include "mnash/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mnash {

namespace {

void require_same_base(const TangentVector& u, const TangentVector& v, const char* op) {
    if (!same_point(u.base, v.base))
        throw ContractViolation(std::string(op) + ": tangent vectors have different base points");
    if (u.components.size() != v.components.size())
        throw ContractViolation(std::string(op) + ": tangent layouts differ");
}

bool all_finite(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double a) { return std::isfinite(a); });
}

double chart_norm(std::span<const double> x) {
    double s = 0.0;
    for (double a : x) s += a * a;
    return std::sqrt(s);
}

}  // namespace

bool same_point(const ManifoldPoint& a, const ManifoldPoint& b) noexcept {
    return a.manifold_id == b.manifold_id && a.coords == b.coords;
}

TangentVector operator+(const TangentVector& u, const TangentVector& v) {
    require_same_base(u, v, "tangent +");
    TangentVector out = u;
    for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] += v.components[i];
    return out;
}

TangentVector operator-(const TangentVector& u, const TangentVector& v) {
    require_same_base(u, v, "tangent -");
    TangentVector out = u;
    for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] -= v.components[i];
    return out;
}

TangentVector operator*(double a, const TangentVector& v) {
    TangentVector out = v;
    for (double& c : out.components) c *= a;
    return out;
}

TangentVector operator-(const TangentVector& v) { return -1.0 * v; }

// ---------------------------------------------------------------------------
// Manifold: validation wrappers

void Manifold::require_owned(const ManifoldPoint& p, const char* op) const {
    if (p.manifold_id != id())
        throw ContractViolation(std::string(op) + ": point belongs to '" + p.manifold_id +
                                "', expected '" + id() + "'");
    if (p.coords.size() != coord_size())
        throw ContractViolation(std::string(op) + ": point has " + std::to_string(p.coords.size()) +
                                " coordinates, expected " + std::to_string(coord_size()));
}

void Manifold::require_based(const TangentVector& v, const ManifoldPoint& p, const char* op) const {
    if (!same_point(v.base, p))
        throw ContractViolation(std::string(op) + ": tangent vector is not based at the given point");
    if (v.components.size() != coord_size())
        throw ContractViolation(std::string(op) + ": tangent layout mismatch");
}

bool Manifold::tangent_valid(std::span<const double>, std::span<const double> v) const {
    return all_finite(v);
}

bool Manifold::is_point(std::span<const double> coords) const {
    return coords.size() == coord_size() && all_finite(coords) && chart_valid(coords);
}

ManifoldPoint Manifold::point(Coords coords) const {
    if (!is_point(coords)) throw DomainError("point is not chart-valid on " + id());
    return ManifoldPoint{std::move(coords), id()};
}

TangentVector Manifold::tangent(const ManifoldPoint& base, Coords components) const {
    require_owned(base, "tangent");
    if (components.size() != coord_size() || !all_finite(components) ||
        !tangent_valid(base.coords, components))
        throw DomainError("invalid tangent vector on " + id());
    return TangentVector{base, std::move(components)};
}

TangentVector Manifold::zero(const ManifoldPoint& base) const {
    require_owned(base, "zero");
    return TangentVector{base, Coords(coord_size(), 0.0)};
}

double Manifold::inner(const ManifoldPoint& p, const TangentVector& u, const TangentVector& v) const {
    require_owned(p, "inner");
    require_based(u, p, "inner");
    require_based(v, p, "inner");
    return inner_at(p.coords, u.components, v.components);
}

double Manifold::norm(const TangentVector& v) const {
    return std::sqrt(std::max(0.0, inner(v.base, v, v)));
}

ManifoldPoint Manifold::exp(const ManifoldPoint& p, const TangentVector& v) const {
    require_owned(p, "exp");
    require_based(v, p, "exp");
    if (std::all_of(v.components.begin(), v.components.end(), [](double x) { return x == 0.0; })) return p;
    return ManifoldPoint{exp_at(p.coords, v.components), id()};
}

TangentVector Manifold::log(const ManifoldPoint& p, const ManifoldPoint& q) const {
    require_owned(p, "log");
    require_owned(q, "log");
    if (p.coords == q.coords) return zero(p);
    return TangentVector{p, log_at(p.coords, q.coords)};
}

double Manifold::distance(const ManifoldPoint& p, const ManifoldPoint& q) const {
    require_owned(p, "distance");
    require_owned(q, "distance");
    if (p.coords == q.coords) return 0.0;
    return distance_at(p.coords, q.coords);
}

ManifoldPoint Manifold::geodesic(const ManifoldPoint& p, const ManifoldPoint& q, double s) const {
    require_owned(p, "geodesic");
    require_owned(q, "geodesic");
    if (s == 0.0 || p.coords == q.coords) return p;
    if (s == 1.0) return q;
    return ManifoldPoint{geodesic_at(p.coords, q.coords, s), id()};
}

TangentVector Manifold::transport(const ManifoldPoint& p, const ManifoldPoint& q,
                                  const TangentVector& v) const {
    require_owned(p, "transport");
    require_owned(q, "transport");
    require_based(v, p, "transport");
    if (p.coords == q.coords) return v;
    return TangentVector{q, transport_at(p.coords, q.coords, v.components)};
}

TangentVector Manifold::egrad_to_rgrad(const ManifoldPoint& p, std::span<const double> egrad) const {
    require_owned(p, "egrad_to_rgrad");
    if (egrad.size() != coord_size()) throw ContractViolation("egrad_to_rgrad: layout mismatch");
    return TangentVector{p, rgrad_at(p.coords, egrad)};
}

TangentVector Manifold::random_unit_tangent(const ManifoldPoint& p, Rng& rng) const {
    require_owned(p, "random_unit_tangent");
    for (;;) {
        TangentVector v{p, gaussian_tangent_at(p.coords, rng)};
        const double n = norm(v);
        if (n > 1e-12) return (1.0 / n) * v;
    }
}

// ---------------------------------------------------------------------------
// Manifold: default kernels

Coords Manifold::log_at(std::span<const double> p, std::span<const double> q) const {
    return shooting_log_coords(*this, p, q, 1e-13, 100);
}

double Manifold::distance_at(std::span<const double> p, std::span<const double> q) const {
    const Coords v = log_at(p, q);
    return std::sqrt(std::max(0.0, inner_at(p, v, v)));
}

Coords Manifold::geodesic_at(std::span<const double> p, std::span<const double> q, double s) const {
    Coords v = log_at(p, q);
    for (double& c : v) c *= s;
    return exp_at(p, v);
}

// ---------------------------------------------------------------------------
// Shooting

Coords shooting_log_coords(const Manifold& m, std::span<const double> p, std::span<const double> q,
                           double tol, int max_iter) {
    const auto n = static_cast<Eigen::Index>(p.size());
    Eigen::Map<const Eigen::VectorXd> target(q.data(), n);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = q[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)];

    auto residual = [&](const Eigen::VectorXd& x) {
        const Coords e = m.exp_at(p, std::span<const double>(x.data(), static_cast<std::size_t>(n)));
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) r(i) = e[static_cast<std::size_t>(i)] - target(i);
        return r;
    };

    const double scale = std::max(1.0, chart_norm(q));
    Eigen::VectorXd r = residual(v);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (!r.allFinite()) break;
        if (r.norm() <= tol * scale) return Coords(v.data(), v.data() + n);

        Eigen::MatrixXd jac(n, n);
        const double h = 1e-6 * std::max(1.0, v.norm());
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::VectorXd vp = v, vm = v;
            vp(j) += h;
            vm(j) -= h;
            jac.col(j) = (residual(vp) - residual(vm)) / (2.0 * h);
        }
        const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);

        double lambda = 1.0;
        bool accepted = false;
        while (lambda > 1e-8) {
            const Eigen::VectorXd trial = v + lambda * step;
            const Eigen::VectorXd rt = residual(trial);
            if (rt.allFinite() && rt.norm() < (1.0 - 1e-4 * lambda) * r.norm()) {
                v = trial;
                r = rt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    if (r.allFinite() && r.norm() <= 1e3 * tol * scale) return Coords(v.data(), v.data() + n);
    throw NumericError("shooting log did not converge", r.allFinite() ? r.norm() : INFINITY);
}

TangentVector shooting_log(const Manifold& m, const ManifoldPoint& p, const ManifoldPoint& q, double tol,
                           int max_iter) {
    m.require_owned(p, "shooting_log");
    m.require_owned(q, "shooting_log");
    return TangentVector{p, shooting_log_coords(m, p.coords, q.coords, tol, max_iter)};
}

// ---------------------------------------------------------------------------
// Curvature and gradient checks

std::pair<TangentVector, TangentVector> orthonormalize(const Manifold& m, const TangentVector& u,
                                                       const TangentVector& w) {
    const double nu = m.norm(u);
    const double nw = m.norm(w);
    if (nu <= 0.0 || nw <= 0.0) throw InputError("orthonormalize: zero vector");
    const TangentVector e1 = (1.0 / nu) * u;
    const TangentVector w_perp = w - m.inner(e1, w) * e1;
    const double np = m.norm(w_perp);
    if (np <= 1e-10 * nw) throw InputError("orthonormalize: vectors span a degenerate plane");
    return {e1, (1.0 / np) * w_perp};
}

std::vector<std::pair<double, double>> curvature_scale_ladder(double s0, int levels) {
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < levels; ++k) {
        const double s = std::ldexp(s0, -k);
        out.emplace_back(s, s);
    }
    return out;
}

CurvatureEstimate sectional_curvature_estimate(const Manifold& m, const ManifoldPoint& p,
                                               const TangentVector& u, const TangentVector& w,
                                               const std::vector<std::pair<double, double>>& scales) {
    if (scales.empty()) throw InputError("curvature estimate needs at least one scale");
    for (std::size_t k = 1; k < scales.size(); ++k)
        if (!(scales[k].first < scales[k - 1].first && scales[k].second < scales[k - 1].second))
            throw InputError("curvature scales must be strictly decreasing");
    m.require_based(u, p, "sectional_curvature_estimate");
    m.require_based(w, p, "sectional_curvature_estimate");

    auto [e1, e2] = orthonormalize(m, u, w);
    CurvatureEstimate est;
    est.plane_basis = {e1, e2};
    est.scales = scales;
    for (const auto& [t, s] : scales) {
        const ManifoldPoint sigma_t = m.exp(p, t * e1);
        const TangentVector w_t = m.transport(p, sigma_t, e2);
        const ManifoldPoint gamma_t = m.exp(sigma_t, s * w_t);
        const ManifoldPoint gamma_0 = m.exp(p, s * e2);
        const double side = m.distance(p, sigma_t);
        const double far = m.distance(gamma_0, gamma_t);
        const double den = m.distance(p, gamma_0) * side;
        est.values.push_back((side * side - far * far) / (den * den));
    }
    if (est.values.size() == 1) {
        est.extrapolated = est.values.back();
    } else {
        const std::size_t k = est.values.size() - 1;
        const double r = scales[k - 1].first / scales[k].first;
        est.extrapolated = est.values[k] + (est.values[k] - est.values[k - 1]) / (r * r - 1.0);
    }
    return est;
}

GradientCheck gradient_check(const Manifold& m, const std::function<double(const ManifoldPoint&)>& f,
                             const ManifoldPoint& p, const TangentVector& grad, const TangentVector& v,
                             const std::vector<double>& steps) {
    GradientCheck out;
    out.steps = steps;
    const double f0 = f(p);
    const double slope = m.inner(p, grad, v);
    for (double t : steps) out.errors.push_back(std::abs(f(m.exp(p, t * v)) - f0 - t * slope));

    const double floor = 1e-13 * std::max(1.0, std::abs(f0));
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (out.errors[i] > floor) pts.emplace_back(std::log(steps[i]), std::log(out.errors[i]));
    if (pts.size() < 2) {
        out.fitted_order = std::numeric_limits<double>::infinity();
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(pts.size());
    out.fitted_order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return out;
}

}  // namespace mnash
