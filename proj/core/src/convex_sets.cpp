#include "mnash/convex_sets.hpp"

#include "mnash/errors.hpp"
#include "mnash/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace mnash {

namespace {

using linalg::Matrix;
using linalg::Vector;
using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix identity(std::size_t n) {
    return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

/// Rebuilds U diag(exp(y)) Uᵀ.
Coords from_log_spectrum(const Matrix& u, const Vector& y) {
    Vector e = y.array().exp();
    return linalg::to_flat(linalg::symmetrize(u * e.asDiagonal() * u.transpose()));
}

/// Principal branch of Lambert W on [0, ∞), Halley iteration.
double lambert_w0(double x) {
    if (x == 0.0) return 0.0;
    double w = x < 1.0 ? x / (1.0 + x) : std::log1p(x) - std::log1p(std::log1p(x)) * 0.5;
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double fp = ew * (w + 1.0);
        const double step = f / (fp - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if (std::abs(step) <= 4e-16 * (1.0 + std::abs(w))) break;
    }
    return w;
}

/// Euclidean projection of (a, r) onto {a² + r² ≤ R², lo ≤ a ≤ hi, r ≥ 0}.
std::pair<double, double> project_band_disc(double a, double r, double radius, double lo, double hi) {
    const double r2 = radius * radius;
    auto feasible = [&](double x, double y) {
        const double slack = 1e-14 * std::max(1.0, r2);
        return x * x + y * y <= r2 + slack && x >= lo - 1e-14 && x <= hi + 1e-14 && y >= -1e-14;
    };
    if (feasible(a, r)) return {a, r};

    std::vector<std::pair<double, double>> candidates;
    const double h = std::hypot(a, r);
    if (h > 0.0) candidates.emplace_back(a * radius / h, r * radius / h);
    for (double edge : {lo, hi}) {
        const double top = std::sqrt(std::max(0.0, r2 - edge * edge));
        candidates.emplace_back(edge, std::clamp(r, 0.0, top));
    }
    candidates.emplace_back(std::clamp(a, std::max(lo, -radius), std::min(hi, radius)), 0.0);

    double best = kInf;
    std::pair<double, double> out{a, r};
    for (auto [x, y] : candidates) {
        if (!feasible(x, y)) continue;
        const double d = std::hypot(x - a, y - r);
        if (d < best) {
            best = d;
            out = {x, y};
        }
    }
    if (!std::isfinite(best)) throw NumericError("band-disc projection found no feasible candidate");
    return out;
}

}  // namespace

std::string to_string(SetKind kind) {
    switch (kind) {
        case SetKind::Interval: return "Interval";
        case SetKind::HalfLine: return "HalfLine";
        case SetKind::Box: return "Box";
        case SetKind::GeodesicBall: return "GeodesicBall";
        case SetKind::TraceHalfSpace: return "TraceHalfSpace";
        case SetKind::DetBandBall: return "DetBandBall";
        case SetKind::TraceInvSublevel: return "TraceInvSublevel";
        case SetKind::HalfPlaneAnnulus: return "HalfPlaneAnnulus";
        case SetKind::GeodesicSegmentImage: return "GeodesicSegmentImage";
        case SetKind::Product: return "Product";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// StrategySet

StrategySet::StrategySet(std::shared_ptr<const Manifold> manifold) : manifold_(std::move(manifold)) {
    if (!manifold_) throw InputError("strategy set without a manifold");
}

void StrategySet::require_owned(const ManifoldPoint& p, const char* op) const { manifold_->require_owned(p, op); }

double StrategySet::boundary_reach(const TangentVector& v) const {
    const ManifoldPoint a = anchor();
    auto inside = [&](double s) { return contains(manifold_->exp(a, s * v)); };
    double reach = sampling_radius();
    if (inside(reach)) {
        if (!bounded()) return reach;
        for (int k = 0; k < 30 && inside(reach); ++k) reach *= 2.0;
        if (inside(reach)) return reach;
    }
    double lo = 0.0, hi = reach;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<ManifoldPoint> StrategySet::sample(std::size_t count, std::uint64_t seed) const {
    std::vector<ManifoldPoint> out;
    for (auto& p : landmarks()) {
        if (out.size() >= count) break;
        if (contains(p)) out.push_back(std::move(p));
    }
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const ManifoldPoint a = anchor();
    const double dim = static_cast<double>(manifold_->dimension());
    const std::size_t max_attempts = 100 * count + 100;
    std::size_t attempts = 0, draws = 0, accepted = 0;
    while (out.size() < count) {
        if (++attempts > max_attempts)
            throw SamplingError("sampling " + to_string(kind()) + " gave up",
                                static_cast<double>(accepted) / static_cast<double>(attempts));
        const TangentVector v = manifold_->random_unit_tangent(a, rng);
        const double reach = boundary_reach(v);
        const bool on_boundary = (draws++ % 3) == 0;
        const double s = on_boundary ? reach : reach * std::pow(unif(rng), 1.0 / dim);
        ManifoldPoint p = manifold_->exp(a, s * v);
        if (contains(p)) {
            out.push_back(std::move(p));
            ++accepted;
        }
    }
    return out;
}

std::vector<ManifoldPoint> StrategySet::sample_ambient(std::size_t count, std::uint64_t seed) const {
    Rng rng = make_rng(seed, 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const ManifoldPoint a = anchor();
    std::vector<ManifoldPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const TangentVector v = manifold_->random_unit_tangent(a, rng);
        const double reach = std::max(boundary_reach(v), 0.1 * sampling_radius());
        out.push_back(manifold_->exp(a, 2.5 * reach * unif(rng) * v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// BoxSet

BoxSet::BoxSet(std::shared_ptr<const Manifold> manifold, Coords lower, Coords upper)
    : StrategySet(std::move(manifold)), lower_(std::move(lower)), upper_(std::move(upper)) {
    const auto* e = dynamic_cast<const EuclideanSpace*>(&this->manifold());
    if (!e || e->matrix_order() != 0) throw InputError("box sets live in R^m");
    if (lower_.size() != e->coord_size() || upper_.size() != e->coord_size())
        throw InputError("box bounds do not match the dimension");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (std::isnan(lower_[i]) || std::isnan(upper_[i])) throw InputError("box bound is NaN");
        if (lower_[i] > upper_[i])
            throw InputError("empty box: lower bound " + std::to_string(lower_[i]) + " exceeds upper bound " +
                             std::to_string(upper_[i]));
        if (lower_[i] == kInf || upper_[i] == -kInf) throw InputError("empty box: infinite bound on wrong side");
    }
}

std::shared_ptr<const BoxSet> BoxSet::interval(double lo, double hi) {
    return std::make_shared<const BoxSet>(EuclideanSpace::vectors(1), Coords{lo}, Coords{hi});
}

std::shared_ptr<const BoxSet> BoxSet::half_line(double lo) {
    return std::make_shared<const BoxSet>(EuclideanSpace::vectors(1), Coords{lo}, Coords{kInf});
}

SetKind BoxSet::kind() const {
    if (lower_.size() != 1) return SetKind::Box;
    const bool lf = std::isfinite(lower_[0]), uf = std::isfinite(upper_[0]);
    if (lf && uf) return SetKind::Interval;
    if (lf != uf) return SetKind::HalfLine;
    return SetKind::Box;
}

double BoxSet::violation(const ManifoldPoint& p) const {
    require_owned(p, "BoxSet::violation");
    double v = 0.0;
    for (std::size_t i = 0; i < lower_.size(); ++i)
        v = std::max({v, lower_[i] - p.coords[i], p.coords[i] - upper_[i]});
    return v;
}

ManifoldPoint BoxSet::project(const ManifoldPoint& q) const {
    require_owned(q, "BoxSet::project");
    if (contains(q)) return q;
    ManifoldPoint out = q;
    for (std::size_t i = 0; i < lower_.size(); ++i) out.coords[i] = std::clamp(q.coords[i], lower_[i], upper_[i]);
    return out;
}

ManifoldPoint BoxSet::anchor() const {
    Coords c(lower_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const bool lf = std::isfinite(lower_[i]), uf = std::isfinite(upper_[i]);
        if (lf && uf) c[i] = 0.5 * (lower_[i] + upper_[i]);
        else if (lf) c[i] = lower_[i] + 1.0;
        else if (uf) c[i] = upper_[i] - 1.0;
        else c[i] = 0.0;
    }
    return ManifoldPoint{std::move(c), manifold().id()};
}

std::vector<ManifoldPoint> BoxSet::landmarks() const {
    const std::size_t m = lower_.size();
    if (m > 4) return {};
    const ManifoldPoint a = anchor();
    std::vector<ManifoldPoint> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Coords c = a.coords;
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            const double b = (mask >> i) & 1 ? upper_[i] : lower_[i];
            if (!std::isfinite(b)) {
                ok = false;
                break;
            }
            c[i] = b;
        }
        if (ok) out.push_back(ManifoldPoint{std::move(c), manifold().id()});
    }
    if (out.empty()) {
        for (std::size_t i = 0; i < m; ++i) {
            for (double b : {lower_[i], upper_[i]}) {
                if (!std::isfinite(b)) continue;
                Coords c = a.coords;
                c[i] = b;
                out.push_back(ManifoldPoint{std::move(c), manifold().id()});
            }
        }
    }
    return out;
}

bool BoxSet::bounded() const {
    for (std::size_t i = 0; i < lower_.size(); ++i)
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// GeodesicBall

GeodesicBall::GeodesicBall(std::shared_ptr<const Manifold> manifold, ManifoldPoint center, double radius)
    : StrategySet(std::move(manifold)), center_(std::move(center)), radius_(radius) {
    this->manifold().require_owned(center_, "GeodesicBall");
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw InputError("geodesic ball radius must be positive");
}

double GeodesicBall::violation(const ManifoldPoint& p) const {
    return std::max(0.0, manifold().distance(center_, p) - radius_);
}

ManifoldPoint GeodesicBall::project(const ManifoldPoint& q) const {
    const double d = manifold().distance(center_, q);
    if (d <= radius_ + kMembershipTol) return q;
    return manifold().geodesic(center_, q, radius_ / d);
}

// ---------------------------------------------------------------------------
// TraceHalfSpace

TraceHalfSpace::TraceHalfSpace(std::shared_ptr<const EuclideanSpace> manifold, double lower_trace)
    : StrategySet(manifold), n_(manifold ? manifold->matrix_order() : 0), c_(lower_trace) {
    if (n_ == 0) throw InputError("trace half-space lives in a symmetric-matrix space");
    if (!std::isfinite(c_)) throw InputError("trace bound must be finite");
}

double TraceHalfSpace::violation(const ManifoldPoint& p) const {
    require_owned(p, "TraceHalfSpace::violation");
    double tr = 0.0;
    for (std::size_t i = 0; i < n_; ++i) tr += p.coords[i * n_ + i];
    return std::max(0.0, c_ - tr);
}

ManifoldPoint TraceHalfSpace::project(const ManifoldPoint& q) const {
    require_owned(q, "TraceHalfSpace::project");
    double tr = 0.0;
    for (std::size_t i = 0; i < n_; ++i) tr += q.coords[i * n_ + i];
    if (tr >= c_ - kMembershipTol) return q;
    ManifoldPoint out = q;
    const double shift = (c_ - tr) / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) out.coords[i * n_ + i] += shift;
    return out;
}

ManifoldPoint TraceHalfSpace::anchor() const {
    return ManifoldPoint{linalg::to_flat((c_ / static_cast<double>(n_) + 1.0) * identity(n_)), manifold().id()};
}

// ---------------------------------------------------------------------------
// DetBandBall

DetBandBall::DetBandBall(std::shared_ptr<const Manifold> manifold, double radius, double det_lo, double det_hi)
    : StrategySet(std::move(manifold)),
      n_(linalg::order_from_size(this->manifold().coord_size())),
      spd_(dynamic_cast<const SPDManifold*>(&this->manifold()) != nullptr),
      radius_(radius),
      log_det_lo_(std::log(det_lo)),
      log_det_hi_(std::log(det_hi)) {
    const auto* e = dynamic_cast<const EuclideanSpace*>(&this->manifold());
    if (!spd_ && !(e && e->matrix_order() > 0))
        throw InputError("det-band ball lives in SPD(n) or a symmetric-matrix space");
    if (!(radius_ > 0.0) || !(det_lo > 0.0) || !(det_lo <= det_hi))
        throw InputError("det-band ball needs radius > 0 and 0 < det_lo <= det_hi");
    const double sn = std::sqrt(static_cast<double>(n_));
    if (std::max(log_det_lo_ / sn, -radius_) > std::min(log_det_hi_ / sn, radius_))
        throw InputError("det-band ball is empty");
}

double DetBandBall::violation(const ManifoldPoint& p) const {
    require_owned(p, "DetBandBall::violation");
    const Vector lambda = linalg::sym_eig(linalg::from_flat(p.coords, n_)).values;
    if (!(lambda.minCoeff() > 0.0)) return kInf;
    const Vector l = lambda.array().log();
    return std::max({0.0, l.squaredNorm() - radius_ * radius_, log_det_lo_ - l.sum(), l.sum() - log_det_hi_});
}

ManifoldPoint DetBandBall::project(const ManifoldPoint& q) const {
    require_owned(q, "DetBandBall::project");
    if (!spd_) throw ContractViolation("det-band ball is not geodesically convex in the Euclidean matrix metric");
    if (contains(q)) return q;
    const linalg::SymEig eig = linalg::sym_eig(linalg::from_flat(q.coords, n_));
    const Vector z = eig.values.array().log();
    const double sn = std::sqrt(static_cast<double>(n_));
    const double mean = z.mean();
    const Vector w = z.array() - mean;
    const double rho = w.norm();
    const auto [a, r] = project_band_disc(z.sum() / sn, rho, radius_, log_det_lo_ / sn, log_det_hi_ / sn);
    if (a == z.sum() / sn && r == rho) return q;
    Vector y = Vector::Constant(z.size(), a / sn);
    if (rho > 0.0) y += (r / rho) * w;
    return ManifoldPoint{from_log_spectrum(eig.vectors, y), manifold().id()};
}

ManifoldPoint DetBandBall::anchor() const {
    const double sn = std::sqrt(static_cast<double>(n_));
    const double lo = std::max(log_det_lo_ / sn, -radius_);
    const double hi = std::min(log_det_hi_ / sn, radius_);
    const double a = 0.5 * (lo + hi);
    return ManifoldPoint{linalg::to_flat(std::exp(a / sn) * identity(n_)), manifold().id()};
}

std::vector<ManifoldPoint> DetBandBall::landmarks() const {
    std::vector<ManifoldPoint> out;
    const double hi = std::exp(log_det_hi_);
    for (std::size_t i = 0; i < n_; ++i) {
        Matrix x = identity(n_);
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = hi;
        ManifoldPoint p{linalg::to_flat(x), manifold().id()};
        if (contains(p)) out.push_back(std::move(p));
    }
    ManifoldPoint lo{linalg::to_flat(std::exp(log_det_lo_ / static_cast<double>(n_)) * identity(n_)), manifold().id()};
    if (contains(lo)) out.push_back(std::move(lo));
    return out;
}

// ---------------------------------------------------------------------------
// TraceInvSublevel

TraceInvSublevel::TraceInvSublevel(std::shared_ptr<const SPDManifold> manifold, double bound)
    : StrategySet(manifold), n_(manifold ? manifold->order() : 0), bound_(bound) {
    if (n_ == 0) throw InputError("trace-inverse sublevel set lives in SPD(n)");
    if (!(bound_ > 0.0) || !std::isfinite(bound_)) throw InputError("trace-inverse bound must be positive");
}

double TraceInvSublevel::violation(const ManifoldPoint& p) const {
    require_owned(p, "TraceInvSublevel::violation");
    const Vector lambda = linalg::sym_eig(linalg::from_flat(p.coords, n_)).values;
    if (!(lambda.minCoeff() > 0.0)) return kInf;
    return std::max(0.0, lambda.cwiseInverse().sum() - bound_);
}

ManifoldPoint TraceInvSublevel::project(const ManifoldPoint& q) const {
    require_owned(q, "TraceInvSublevel::project");
    const linalg::SymEig eig = linalg::sym_eig(linalg::from_flat(q.coords, n_));
    const Vector z = eig.values.array().log();
    if ((-z.array()).exp().sum() <= bound_ + kMembershipTol) return q;

    // KKT: y_i − z_i = μ e^{−y_i}, so y_i = z_i + W(μ e^{−z_i}) and e^{−y_i} = W(μ e^{−z_i}) / μ.
    auto trace_inv = [&](double mu) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < z.size(); ++i) s += lambert_w0(mu * std::exp(-z(i))) / mu;
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (trace_inv(hi) > bound_) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw NumericError("trace-inverse projection: multiplier bracket failed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (trace_inv(mid) > bound_ ? lo : hi) = mid;
    }
    Vector y(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) y(i) = z(i) + lambert_w0(hi * std::exp(-z(i)));
    return ManifoldPoint{from_log_spectrum(eig.vectors, y), manifold().id()};
}

ManifoldPoint TraceInvSublevel::anchor() const {
    const double c = 2.0 * static_cast<double>(n_) / bound_;
    return ManifoldPoint{linalg::to_flat(c * identity(n_)), manifold().id()};
}

// ---------------------------------------------------------------------------
// HalfPlaneAnnulus

namespace {

/// Geodesic line of the half-plane: vertical x = a, or semicircle |z − c| = R.
struct HyperbolicLine {
    bool vertical;
    double a;  // vertical position, or centre
    double radius;

    /// Möbius map sending the line onto the imaginary axis, with its inverse.
    cplx to_axis(cplx z) const {
        if (vertical) return z - a;
        const double lo = a - radius, hi = a + radius;
        return (z - lo) / (hi - z);
    }
    cplx from_axis(cplx w) const {
        if (vertical) return w + a;
        const double lo = a - radius, hi = a + radius;
        return (hi * w + lo) / (w + 1.0);
    }
    /// Nearest point of the line: on the imaginary axis the foot of w is i|w|.
    cplx foot(cplx z) const { return from_axis(cplx(0.0, std::abs(to_axis(z)))); }
};

const HyperbolicLine kAnnulusEdges[3] = {{true, 0.0, 0.0}, {false, 0.0, 2.0}, {false, 1.0, 2.0}};

}  // namespace

HalfPlaneAnnulus::HalfPlaneAnnulus(std::shared_ptr<const PoincareHalfPlane> manifold)
    : StrategySet(std::move(manifold)) {}

double HalfPlaneAnnulus::violation(const ManifoldPoint& p) const {
    require_owned(p, "HalfPlaneAnnulus::violation");
    const double x = p.coords[0], y = p.coords[1];
    return std::max({0.0, -x, x * x + y * y - 4.0, 4.0 - (x - 1.0) * (x - 1.0) - y * y});
}

ManifoldPoint HalfPlaneAnnulus::project(const ManifoldPoint& q) const {
    if (contains(q)) return q;
    std::vector<ManifoldPoint> candidates = landmarks();
    for (const auto& edge : kAnnulusEdges) {
        const cplx f = edge.foot(cplx(q.coords[0], q.coords[1]));
        if (f.imag() > 0.0) candidates.push_back(ManifoldPoint{{f.real(), f.imag()}, manifold().id()});
    }
    double best = kInf;
    ManifoldPoint out = q;
    for (const auto& c : candidates) {
        if (violation(c) > 1e-12) continue;
        const double d = manifold().distance(q, c);
        if (d < best) {
            best = d;
            out = c;
        }
    }
    if (!std::isfinite(best)) throw NumericError("annulus projection found no feasible candidate");
    return out;
}

ManifoldPoint HalfPlaneAnnulus::anchor() const { return ManifoldPoint{{0.1, 1.9}, manifold().id()}; }

std::vector<ManifoldPoint> HalfPlaneAnnulus::landmarks() const {
    return {ManifoldPoint{{0.0, std::sqrt(3.0)}, manifold().id()}, ManifoldPoint{{0.0, 2.0}, manifold().id()},
            ManifoldPoint{{0.5, std::sqrt(15.0) / 2.0}, manifold().id()}};
}

// ---------------------------------------------------------------------------
// GeodesicSegmentImage

GeodesicSegmentImage::GeodesicSegmentImage(std::shared_ptr<const Manifold> manifold, ManifoldPoint origin,
                                           TangentVector velocity, double t_lo, double t_hi)
    : StrategySet(std::move(manifold)),
      origin_(std::move(origin)),
      velocity_(std::move(velocity)),
      t_lo_(t_lo),
      t_hi_(t_hi) {
    this->manifold().require_based(velocity_, origin_, "GeodesicSegmentImage");
    if (!(t_lo_ <= t_hi_)) throw InputError("geodesic segment needs t_lo <= t_hi");
}

ManifoldPoint GeodesicSegmentImage::at(double t) const { return manifold().exp(origin_, t * velocity_); }

std::pair<ManifoldPoint, double> GeodesicSegmentImage::project_with_parameter(const ManifoldPoint& q) const {
    require_owned(q, "GeodesicSegmentImage::project");
    auto f = [&](double t) { return manifold().distance(q, at(t)); };
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = t_lo_, b = t_hi_;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    double t = 0.5 * (a + b);
    double ft = f(t);
    for (double end : {t_lo_, t_hi_}) {
        const double fe = f(end);
        if (fe < ft) {
            ft = fe;
            t = end;
        }
    }
    return {at(t), t};
}

double GeodesicSegmentImage::violation(const ManifoldPoint& p) const {
    return manifold().distance(p, project_with_parameter(p).first);
}

ManifoldPoint GeodesicSegmentImage::project(const ManifoldPoint& q) const { return project_with_parameter(q).first; }

ManifoldPoint GeodesicSegmentImage::anchor() const { return at(0.5 * (t_lo_ + t_hi_)); }

std::vector<ManifoldPoint> GeodesicSegmentImage::landmarks() const { return {at(t_lo_), at(t_hi_)}; }

std::vector<ManifoldPoint> GeodesicSegmentImage::sample(std::size_t count, std::uint64_t seed) const {
    std::vector<ManifoldPoint> out = landmarks();
    out.resize(std::min(out.size(), count));
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(t_lo_, t_hi_);
    while (out.size() < count) out.push_back(at(unif(rng)));
    return out;
}

std::pair<ManifoldPoint, double> project_onto_geodesic_image(const GeodesicSegmentImage& segment,
                                                             const ManifoldPoint& q) {
    return segment.project_with_parameter(q);
}

// ---------------------------------------------------------------------------
// ProductSet

ProductSet::ProductSet(std::shared_ptr<const ProductManifold> manifold, std::vector<SetPtr> factors)
    : StrategySet(manifold), product_(std::move(manifold)), factors_(std::move(factors)) {
    if (factors_.size() != product_->factor_count()) throw InputError("product set: factor count mismatch");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (!factors_[i]) throw InputError("product set: null factor");
        if (factors_[i]->manifold().id() != product_->factor(i).id())
            throw InputError("product set: factor " + std::to_string(i) + " lives on " +
                             factors_[i]->manifold().id() + ", expected " + product_->factor(i).id());
    }
}

double ProductSet::violation(const ManifoldPoint& p) const {
    double v = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        v = std::max(v, factors_[i]->violation(product_->component(p, i)));
    return v;
}

ManifoldPoint ProductSet::project(const ManifoldPoint& q) const {
    std::vector<ManifoldPoint> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(factors_[i]->project(product_->component(q, i)));
    return product_->combine(parts);
}

ManifoldPoint ProductSet::anchor() const {
    std::vector<ManifoldPoint> parts;
    for (const auto& f : factors_) parts.push_back(f->anchor());
    return product_->combine(parts);
}

bool ProductSet::bounded() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const SetPtr& f) { return f->bounded(); });
}

bool ProductSet::geodesically_convex() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const SetPtr& f) { return f->geodesically_convex(); });
}

std::vector<ManifoldPoint> ProductSet::sample(std::size_t count, std::uint64_t seed) const {
    std::vector<std::vector<ManifoldPoint>> per;
    for (std::size_t i = 0; i < factors_.size(); ++i) per.push_back(factors_[i]->sample(count, derive_seed(seed, i)));
    std::vector<ManifoldPoint> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        std::vector<ManifoldPoint> parts;
        for (auto& f : per) parts.push_back(f[j]);
        out.push_back(product_->combine(parts));
    }
    return out;
}

std::vector<ManifoldPoint> ProductSet::sample_ambient(std::size_t count, std::uint64_t seed) const {
    std::vector<std::vector<ManifoldPoint>> per;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        per.push_back(factors_[i]->sample_ambient(count, derive_seed(seed, i)));
    std::vector<ManifoldPoint> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        std::vector<ManifoldPoint> parts;
        for (auto& f : per) parts.push_back(f[j]);
        out.push_back(product_->combine(parts));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Probes

ObtuseAngleReport obtuse_angle_check(const StrategySet& k, const ManifoldPoint& q, const ManifoldPoint& p,
                                     std::size_t directions, std::uint64_t seed, double tol) {
    const Manifold& m = k.manifold();
    ObtuseAngleReport rep;
    rep.directions = directions;
    const TangentVector to_q = m.log(p, q);
    double worst = -kInf;
    for (const auto& z : k.sample(directions, seed)) {
        if (same_point(z, p)) continue;
        const double val = m.inner(p, to_q, m.log(p, z));
        if (val > worst) {
            worst = val;
            rep.witness = z;
        }
    }
    rep.worst = std::isfinite(worst) ? worst : 0.0;
    rep.pass = rep.worst <= tol;
    if (rep.pass) rep.witness.reset();
    return rep;
}

NonexpansivenessReport nonexpansiveness_check(const StrategySet& k, std::size_t pairs, std::uint64_t seed,
                                              double tol) {
    const Manifold& m = k.manifold();
    NonexpansivenessReport rep;
    const auto pts = k.sample_ambient(2 * pairs, seed);
    double worst = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
        const ManifoldPoint& q1 = pts[2 * j];
        const ManifoldPoint& q2 = pts[2 * j + 1];
        const double d = m.distance(q1, q2);
        if (d < 1e-12) continue;
        ++rep.pairs;
        const double ratio = m.distance(k.project(q1), k.project(q2)) / d;
        if (ratio > worst) {
            worst = ratio;
            rep.witness = std::make_pair(q1, q2);
        }
    }
    rep.max_ratio = worst;
    rep.pass = worst <= 1.0 + tol;
    if (rep.pass) rep.witness.reset();
    return rep;
}

std::optional<ConvexityWitness> geodesic_exit(const StrategySet& k, const ManifoldPoint& a, const ManifoldPoint& b,
                                              std::size_t points_per_geodesic) {
    std::optional<ConvexityWitness> worst;
    for (std::size_t j = 1; j <= points_per_geodesic; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(points_per_geodesic + 1);
        ManifoldPoint x = k.manifold().geodesic(a, b, s);
        const double v = k.violation(x);
        if (v > kMembershipTol && (!worst || v > worst->violation)) worst = ConvexityWitness{a, b, s, std::move(x), v};
    }
    return worst;
}

ConvexityReport convexity_probe(const StrategySet& k, std::size_t pairs, std::size_t points_per_geodesic,
                                std::uint64_t seed) {
    ConvexityReport rep;
    const auto pts = k.sample(2 * pairs, seed);
    for (std::size_t j = 0; j < pairs; ++j) {
        ++rep.pairs;
        auto w = geodesic_exit(k, pts[2 * j], pts[2 * j + 1], points_per_geodesic);
        if (w && (!rep.witness || w->violation > rep.witness->violation)) rep.witness = std::move(w);
    }
    rep.pass = !rep.witness.has_value();
    return rep;
}

}  // namespace mnash
