#include "mnash/manifolds.hpp"

#include "mnash/errors.hpp"
#include "mnash/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace mnash {

namespace {

using linalg::Matrix;
using linalg::MatrixFunction;
using cplx = std::complex<double>;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Coords symmetric_gaussian(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Coords z(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i * n + i] = normal(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = normal(rng) / std::numbers::sqrt2;
            z[i * n + j] = a;
            z[j * n + i] = a;
        }
    }
    return z;
}

Coords symmetrized(std::span<const double> g, std::size_t n) {
    Coords out(g.begin(), g.end());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = 0.5 * (g[i * n + j] + g[j * n + i]);
            out[i * n + j] = a;
            out[j * n + i] = a;
        }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// EuclideanSpace

std::shared_ptr<const EuclideanSpace> EuclideanSpace::vectors(std::size_t dim) {
    return std::make_shared<const EuclideanSpace>(dim, 0);
}

std::shared_ptr<const EuclideanSpace> EuclideanSpace::symmetric_matrices(std::size_t n) {
    return std::make_shared<const EuclideanSpace>(n * n, n);
}

EuclideanSpace::EuclideanSpace(std::size_t dim, std::size_t matrix_order) : size_(dim), order_(matrix_order) {
    if (dim == 0) throw InputError("EuclideanSpace: dimension must be positive");
    if (order_ != 0 && order_ * order_ != size_) throw InputError("EuclideanSpace: inconsistent matrix order");
}

std::string EuclideanSpace::id() const {
    return order_ == 0 ? "euclidean(" + std::to_string(size_) + ")" : "sym(" + std::to_string(order_) + ")";
}

std::size_t EuclideanSpace::dimension() const { return order_ == 0 ? size_ : order_ * (order_ + 1) / 2; }

bool EuclideanSpace::chart_valid(std::span<const double> x) const {
    return order_ == 0 || linalg::is_symmetric(x, order_);
}

bool EuclideanSpace::tangent_valid(std::span<const double>, std::span<const double> v) const {
    return order_ == 0 || linalg::is_symmetric(v, order_);
}

double EuclideanSpace::inner_at(std::span<const double>, std::span<const double> u,
                                std::span<const double> v) const {
    return dot(u, v);
}

Coords EuclideanSpace::exp_at(std::span<const double> p, std::span<const double> v) const {
    Coords out(p.begin(), p.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    return out;
}

Coords EuclideanSpace::log_at(std::span<const double> p, std::span<const double> q) const {
    Coords out(q.begin(), q.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= p[i];
    return out;
}

double EuclideanSpace::distance_at(std::span<const double> p, std::span<const double> q) const {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (q[i] - p[i]) * (q[i] - p[i]);
    return std::sqrt(s);
}

Coords EuclideanSpace::geodesic_at(std::span<const double> p, std::span<const double> q, double s) const {
    Coords out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = (1.0 - s) * p[i] + s * q[i];
    return out;
}

Coords EuclideanSpace::transport_at(std::span<const double>, std::span<const double>,
                                    std::span<const double> v) const {
    return Coords(v.begin(), v.end());
}

Coords EuclideanSpace::rgrad_at(std::span<const double>, std::span<const double> egrad) const {
    return order_ == 0 ? Coords(egrad.begin(), egrad.end()) : symmetrized(egrad, order_);
}

Coords EuclideanSpace::gaussian_tangent_at(std::span<const double>, Rng& rng) const {
    if (order_ != 0) return symmetric_gaussian(order_, rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    Coords v(size_);
    for (double& c : v) c = normal(rng);
    return v;
}

// ---------------------------------------------------------------------------
// PoincareHalfPlane
//
// exp and log go through the isometry z ↦ x + y·z that sends i to p = x + iy: geodesics
// from i are rotations (elliptic Möbius maps fixing i) of the vertical line i·e^τ.

std::shared_ptr<const PoincareHalfPlane> PoincareHalfPlane::make() {
    return std::make_shared<const PoincareHalfPlane>();
}

bool PoincareHalfPlane::chart_valid(std::span<const double> x) const { return x[1] > 0.0; }

double PoincareHalfPlane::inner_at(std::span<const double> p, std::span<const double> u,
                                   std::span<const double> v) const {
    return (u[0] * v[0] + u[1] * v[1]) / (p[1] * p[1]);
}

Coords PoincareHalfPlane::exp_at(std::span<const double> p, std::span<const double> v) const {
    const double speed = std::hypot(v[0], v[1]);
    if (speed == 0.0) return Coords(p.begin(), p.end());
    const double tau = speed / p[1];
    // rotation angle that turns the upward direction into v
    const double phi = std::atan2(v[1], v[0]) - std::numbers::pi / 2.0;
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    const cplx w(0.0, std::exp(tau));
    const cplx z = (c * w + s) / (-s * w + c);
    return {p[0] + p[1] * z.real(), p[1] * z.imag()};
}

Coords PoincareHalfPlane::log_at(std::span<const double> p, std::span<const double> q) const {
    const cplx w((q[0] - p[0]) / p[1], q[1] / p[1]);
    const cplx zeta = (w - cplx(0.0, 1.0)) / (w + cplx(0.0, 1.0));
    const double r = std::abs(zeta);
    if (r == 0.0) return {0.0, 0.0};
    const double d = distance_at(p, q);
    const cplx dir = cplx(0.0, 1.0) * zeta / r;
    return {p[1] * d * dir.real(), p[1] * d * dir.imag()};
}

double PoincareHalfPlane::distance_at(std::span<const double> p, std::span<const double> q) const {
    const double chord = std::hypot(q[0] - p[0], q[1] - p[1]);
    return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p[1] * q[1])));
}

Coords PoincareHalfPlane::transport_rk4(std::span<const double> p, std::span<const double> q,
                                        std::span<const double> v, int steps) const {
    using State = std::array<double, 6>;  // x, y, ẋ, ẏ, w1, w2
    auto rhs = [](const State& s) {
        const double y = s[1], vx = s[2], vy = s[3], w1 = s[4], w2 = s[5];
        return State{vx,
                     vy,
                     2.0 * vx * vy / y,
                     (vy * vy - vx * vx) / y,
                     (vx * w2 + vy * w1) / y,
                     (vy * w2 - vx * w1) / y};
    };
    const Coords vel = log_at(p, q);
    State s{p[0], p[1], vel[0], vel[1], v[0], v[1]};
    const double h = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        const State k1 = rhs(s);
        State tmp;
        for (int i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
        const State k2 = rhs(tmp);
        for (int i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
        const State k3 = rhs(tmp);
        for (int i = 0; i < 6; ++i) tmp[i] = s[i] + h * k3[i];
        const State k4 = rhs(tmp);
        for (int i = 0; i < 6; ++i) s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return {s[4], s[5]};
}

Coords PoincareHalfPlane::transport_at(std::span<const double> p, std::span<const double> q,
                                       std::span<const double> v) const {
    const double vnorm = std::hypot(v[0], v[1]) / p[1];
    if (vnorm == 0.0) return {0.0, 0.0};
    const double d = distance_at(p, q);
    int steps = std::max(16, static_cast<int>(std::ceil(8.0 * d)));
    Coords prev = transport_rk4(p, q, v, steps);
    for (; steps <= (1 << 20); steps *= 2) {
        Coords next = transport_rk4(p, q, v, 2 * steps);
        const double diff = std::hypot(next[0] - prev[0], next[1] - prev[1]) / q[1];
        if (!std::isfinite(diff)) break;
        if (diff <= 1e-12 * vnorm) return next;
        prev = std::move(next);
    }
    throw NumericError("half-plane transport: RK4 step doubling did not settle");
}

Coords PoincareHalfPlane::rgrad_at(std::span<const double> p, std::span<const double> egrad) const {
    const double y2 = p[1] * p[1];
    return {y2 * egrad[0], y2 * egrad[1]};
}

Coords PoincareHalfPlane::gaussian_tangent_at(std::span<const double> p, Rng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double a = normal(rng);
    const double b = normal(rng);
    return {p[1] * a, p[1] * b};
}

// ---------------------------------------------------------------------------
// SPDManifold

namespace {

struct Whitening {
    Matrix sqrt;
    Matrix inv_sqrt;
};

Whitening whitening(std::span<const double> x, std::size_t n) {
    const linalg::SymEig eig = linalg::sym_eig(linalg::from_flat(x, n));
    return {linalg::spd_fun(eig, MatrixFunction::Sqrt), linalg::spd_fun(eig, MatrixFunction::InvSqrt)};
}

}  // namespace

std::shared_ptr<const SPDManifold> SPDManifold::make(std::size_t n) { return std::make_shared<const SPDManifold>(n); }

SPDManifold::SPDManifold(std::size_t n) : n_(n) {
    if (n < 1) throw InputError("SPDManifold: order must be positive");
}

std::string SPDManifold::id() const { return "spd(" + std::to_string(n_) + ")"; }

ManifoldPoint SPDManifold::identity() const {
    return ManifoldPoint{linalg::to_flat(Matrix::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_))),
                         id()};
}

bool SPDManifold::chart_valid(std::span<const double> x) const {
    if (!linalg::is_symmetric(x, n_)) return false;
    return linalg::sym_eig(linalg::from_flat(x, n_)).values.minCoeff() > linalg::kPdEpsilon;
}

bool SPDManifold::tangent_valid(std::span<const double>, std::span<const double> v) const {
    return linalg::is_symmetric(v, n_);
}

double SPDManifold::inner_at(std::span<const double> p, std::span<const double> u,
                             std::span<const double> v) const {
    const Eigen::LLT<Matrix> llt(linalg::from_flat(p, n_));
    const Matrix a = llt.solve(linalg::from_flat(u, n_));
    const Matrix b = llt.solve(linalg::from_flat(v, n_));
    return (a * b).trace();
}

Coords SPDManifold::exp_at(std::span<const double> p, std::span<const double> v) const {
    const Whitening w = whitening(p, n_);
    const Matrix inner = linalg::symmetrize(w.inv_sqrt * linalg::from_flat(v, n_) * w.inv_sqrt);
    return linalg::to_flat(linalg::symmetrize(w.sqrt * linalg::spd_fun(inner, MatrixFunction::Exp) * w.sqrt));
}

Coords SPDManifold::log_at(std::span<const double> p, std::span<const double> q) const {
    const Whitening w = whitening(p, n_);
    const Matrix inner = linalg::symmetrize(w.inv_sqrt * linalg::from_flat(q, n_) * w.inv_sqrt);
    return linalg::to_flat(linalg::symmetrize(w.sqrt * linalg::spd_fun(inner, MatrixFunction::Log) * w.sqrt));
}

double SPDManifold::distance_at(std::span<const double> p, std::span<const double> q) const {
    const Whitening w = whitening(p, n_);
    const Matrix inner = linalg::symmetrize(w.inv_sqrt * linalg::from_flat(q, n_) * w.inv_sqrt);
    const linalg::Vector lambda = linalg::sym_eig(inner).values;
    double s = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (!(lambda(i) > 0.0)) throw DomainError("SPD distance: argument is not positive definite");
        s += std::log(lambda(i)) * std::log(lambda(i));
    }
    return std::sqrt(s);
}

Coords SPDManifold::geodesic_at(std::span<const double> p, std::span<const double> q, double s) const {
    const Whitening w = whitening(p, n_);
    const Matrix inner = linalg::symmetrize(w.inv_sqrt * linalg::from_flat(q, n_) * w.inv_sqrt);
    return linalg::to_flat(linalg::symmetrize(w.sqrt * linalg::spd_fun(inner, MatrixFunction::Pow, s) * w.sqrt));
}

Coords SPDManifold::transport_at(std::span<const double> p, std::span<const double> q,
                                 std::span<const double> v) const {
    // E = (Y X⁻¹)^{1/2} = X^{1/2} (X^{-1/2} Y X^{-1/2})^{1/2} X^{-1/2}
    const Whitening w = whitening(p, n_);
    const Matrix inner = linalg::symmetrize(w.inv_sqrt * linalg::from_flat(q, n_) * w.inv_sqrt);
    const Matrix e = w.sqrt * linalg::spd_fun(inner, MatrixFunction::Sqrt) * w.inv_sqrt;
    return linalg::to_flat(linalg::symmetrize(e * linalg::from_flat(v, n_) * e.transpose()));
}

Coords SPDManifold::rgrad_at(std::span<const double> p, std::span<const double> egrad) const {
    const Matrix x = linalg::from_flat(p, n_);
    const Matrix g = linalg::symmetrize(linalg::from_flat(egrad, n_));
    return linalg::to_flat(linalg::symmetrize(x * g * x));
}

Coords SPDManifold::gaussian_tangent_at(std::span<const double> p, Rng& rng) const {
    const Whitening w = whitening(p, n_);
    const Matrix z = linalg::from_flat(symmetric_gaussian(n_, rng), n_);
    return linalg::to_flat(linalg::symmetrize(w.sqrt * z * w.sqrt));
}

// ---------------------------------------------------------------------------
// ProductManifold

std::shared_ptr<const ProductManifold> ProductManifold::make(std::vector<std::shared_ptr<const Manifold>> factors) {
    return std::make_shared<const ProductManifold>(std::move(factors));
}

ProductManifold::ProductManifold(std::vector<std::shared_ptr<const Manifold>> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty()) throw InputError("ProductManifold: no factors");
    offsets_.push_back(0);
    for (const auto& f : factors_) {
        if (!f) throw InputError("ProductManifold: null factor");
        offsets_.push_back(offsets_.back() + f->coord_size());
    }
}

std::string ProductManifold::id() const {
    std::string s = "product[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ",";
        s += factors_[i]->id();
    }
    return s + "]";
}

std::size_t ProductManifold::dimension() const {
    std::size_t d = 0;
    for (const auto& f : factors_) d += f->dimension();
    return d;
}

std::span<const double> ProductManifold::slice(std::span<const double> x, std::size_t i) const {
    return x.subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

ManifoldPoint ProductManifold::component(const ManifoldPoint& p, std::size_t i) const {
    require_owned(p, "component");
    const auto s = slice(p.coords, i);
    return ManifoldPoint{Coords(s.begin(), s.end()), factors_.at(i)->id()};
}

TangentVector ProductManifold::component(const TangentVector& v, std::size_t i) const {
    const auto s = slice(v.components, i);
    return TangentVector{component(v.base, i), Coords(s.begin(), s.end())};
}

ManifoldPoint ProductManifold::combine(const std::vector<ManifoldPoint>& parts) const {
    if (parts.size() != factors_.size()) throw ContractViolation("combine: wrong number of factors");
    Coords c;
    c.reserve(coord_size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        factors_[i]->require_owned(parts[i], "combine");
        c.insert(c.end(), parts[i].coords.begin(), parts[i].coords.end());
    }
    return ManifoldPoint{std::move(c), id()};
}

TangentVector ProductManifold::combine(const ManifoldPoint& base, const std::vector<TangentVector>& parts) const {
    require_owned(base, "combine");
    if (parts.size() != factors_.size()) throw ContractViolation("combine: wrong number of factors");
    Coords c;
    c.reserve(coord_size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        factors_[i]->require_based(parts[i], component(base, i), "combine");
        c.insert(c.end(), parts[i].components.begin(), parts[i].components.end());
    }
    return TangentVector{base, std::move(c)};
}

ManifoldPoint ProductManifold::replace(const ManifoldPoint& p, std::size_t i, const ManifoldPoint& q) const {
    require_owned(p, "replace");
    factors_.at(i)->require_owned(q, "replace");
    ManifoldPoint out = p;
    std::copy(q.coords.begin(), q.coords.end(), out.coords.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
    return out;
}

bool ProductManifold::chart_valid(std::span<const double> x) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i]->chart_valid(slice(x, i))) return false;
    return true;
}

bool ProductManifold::tangent_valid(std::span<const double> base, std::span<const double> v) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i]->tangent_valid(slice(base, i), slice(v, i))) return false;
    return true;
}

double ProductManifold::inner_at(std::span<const double> p, std::span<const double> u,
                                 std::span<const double> v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        s += factors_[i]->inner_at(slice(p, i), slice(u, i), slice(v, i));
    return s;
}

Coords ProductManifold::exp_at(std::span<const double> p, std::span<const double> v) const {
    Coords out;
    out.reserve(coord_size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Coords part = factors_[i]->exp_at(slice(p, i), slice(v, i));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Coords ProductManifold::log_at(std::span<const double> p, std::span<const double> q) const {
    Coords out;
    out.reserve(coord_size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto pi = slice(p, i), qi = slice(q, i);
        if (std::equal(pi.begin(), pi.end(), qi.begin())) {
            out.insert(out.end(), pi.size(), 0.0);
            continue;
        }
        const Coords part = factors_[i]->log_at(pi, qi);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

double ProductManifold::distance_at(std::span<const double> p, std::span<const double> q) const {
    double s = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto pi = slice(p, i), qi = slice(q, i);
        if (std::equal(pi.begin(), pi.end(), qi.begin())) continue;
        const double d = factors_[i]->distance_at(pi, qi);
        s += d * d;
    }
    return std::sqrt(s);
}

Coords ProductManifold::geodesic_at(std::span<const double> p, std::span<const double> q, double s) const {
    Coords out;
    out.reserve(coord_size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto pi = slice(p, i), qi = slice(q, i);
        if (std::equal(pi.begin(), pi.end(), qi.begin())) {
            out.insert(out.end(), pi.begin(), pi.end());
            continue;
        }
        const Coords part = factors_[i]->geodesic_at(pi, qi, s);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Coords ProductManifold::transport_at(std::span<const double> p, std::span<const double> q,
                                     std::span<const double> v) const {
    Coords out;
    out.reserve(coord_size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto pi = slice(p, i), qi = slice(q, i), vi = slice(v, i);
        if (std::equal(pi.begin(), pi.end(), qi.begin())) {
            out.insert(out.end(), vi.begin(), vi.end());
            continue;
        }
        const Coords part = factors_[i]->transport_at(pi, qi, vi);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Coords ProductManifold::rgrad_at(std::span<const double> p, std::span<const double> egrad) const {
    Coords out;
    out.reserve(coord_size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Coords part = factors_[i]->rgrad_at(slice(p, i), slice(egrad, i));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Coords ProductManifold::gaussian_tangent_at(std::span<const double> p, Rng& rng) const {
    Coords out;
    out.reserve(coord_size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Coords part = factors_[i]->gaussian_tangent_at(slice(p, i), rng);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace mnash
