#pragma once

// Reference computations that share no code with the library: Eigen's own eigensolvers,
// closed forms, quadrature, Lambert W and brute-force scans.

#include <Eigen/Dense>
#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXd;

inline Mat from_flat(const std::vector<double>& flat, std::size_t n) {
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = flat[i * n + j];
    return a;
}

inline std::vector<double> to_flat(const Mat& a) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.push_back(a(i, j));
    return out;
}

inline Mat apply(const Mat& x, const std::function<double(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    Eigen::VectorXd v = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().transpose();
}

inline Mat logm(const Mat& x) { return apply(x, [](double l) { return std::log(l); }); }
inline Mat expm(const Mat& x) { return apply(x, [](double l) { return std::exp(l); }); }
inline Mat sqrtm(const Mat& x) { return apply(x, [](double l) { return std::sqrt(l); }); }

/// Affine-invariant distance from the generalized eigenvalues of (Y, X).
inline double spd_distance(const Mat& x, const Mat& y) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(y, x);
    return std::sqrt(es.eigenvalues().array().log().square().sum());
}

inline double halfplane_distance(double x1, double y1, double x2, double y2) {
    return std::acosh(1.0 + ((x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2)) / (2.0 * y1 * y2));
}

/// Hyperbolic length of the semicircle (or vertical segment) through two points, by composite Simpson.
inline double halfplane_length_quadrature(double x1, double y1, double x2, double y2, int panels = 2000) {
    if (std::abs(x1 - x2) < 1e-12) return std::abs(std::log(y2 / y1));
    const double c = (x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1) / (2.0 * (x2 - x1));
    const double a = std::atan2(y1, x1 - c);
    const double b = std::atan2(y2, x2 - c);
    const double h = (b - a) / panels;
    auto f = [](double th) { return 1.0 / std::sin(th); };
    double s = f(a) + f(b);
    for (int k = 1; k < panels; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return std::abs(s * h / 3.0);
}

/// Root t of j ln j = rhs with j = (√(n/3)/t)^{2/(n+1)}, via ln j = W(rhs).
inline double trace_inverse_root(std::size_t n, double rhs) {
    const double j = std::exp(boost::math::lambert_w0(rhs));
    return std::sqrt(n / 3.0) * std::pow(j, -(static_cast<double>(n) + 1.0) / 2.0);
}

/// Max over the simplex of min_r (A λ)_r by a barycentric grid with `steps` divisions (2 or 3 columns).
inline double max_min_grid(const Mat& a, int steps = 600) {
    double best = -INFINITY;
    const Eigen::Index m = a.cols();
    for (int i = 0; i <= steps; ++i) {
        const int jmax = m == 3 ? steps - i : 0;
        for (int j = 0; j <= jmax; ++j) {
            Eigen::VectorXd w(m);
            if (m == 1) w << 1.0;
            else if (m == 2) w << double(i) / steps, 1.0 - double(i) / steps;
            else w << double(i) / steps, double(j) / steps, double(steps - i - j) / steps;
            best = std::max(best, (a * w).minCoeff());
        }
    }
    return best;
}

/// Central difference of f along the chart direction d.
inline double directional_fd(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
                             const std::vector<double>& d, double step = 1e-6) {
    std::vector<double> xp = x, xm = x;
    for (std::size_t k = 0; k < x.size(); ++k) {
        xp[k] += step * d[k];
        xm[k] -= step * d[k];
    }
    return (f(xp) - f(xm)) / (2.0 * step);
}

// Frozen reference values, computed once at 30 digits and pinned here.

/// Trace-half-space instance n=2, g = t², h = 0.1 sin t, A = I, c = 0.1.
inline constexpr double kLipschitz = 2.83548937575156504;
inline constexpr double kKappa = 0.879289321881345248;
inline constexpr double kAlpha = 0.109364343517580255;
inline constexpr double kRho = 0.0480814497247858191;
/// Equilibrium (0.05, h(0.05)·I + ((1 − 2h(0.05))/2)·I) collapses to (0.05, 0.5·I).
inline constexpr double kEquilibriumT = 0.05;
inline constexpr double kEquilibriumDiag = 0.5;

/// Root of j ln j = 1/2 for n = 2.
inline constexpr double kRootJ = 1.42152993588311663;
inline constexpr double kRootT = 0.481748482855915519;

}  // namespace oracle
