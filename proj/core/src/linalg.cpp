#include "mnash/linalg.hpp"

#include "mnash/errors.hpp"
#include "mnash/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mnash {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace mnash

namespace mnash::linalg {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return s;
}

}  // namespace

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

SymEig sym_eig(const Matrix& input) {
    if (input.rows() != input.cols()) throw ContractViolation("sym_eig: matrix is not square");
    const Eigen::Index n = input.rows();
    if (!input.allFinite()) throw DomainError("sym_eig: non-finite entry");

    Matrix a = symmetrize(input);
    Matrix v = Matrix::Identity(n, n);
    const double scale2 = a.squaredNorm();
    const double threshold = scale2 * 1e-32;

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= threshold) break;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == kMaxSweeps && off_diagonal_norm2(a) > threshold)
        throw NumericError("sym_eig: Jacobi sweeps did not converge", std::sqrt(off_diagonal_norm2(a)));

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

    SymEig out{Vector(n), Matrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = a(src, src);
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

Matrix spd_fun(const SymEig& eig, MatrixFunction f, double power) {
    const Eigen::Index n = eig.values.size();
    Vector mapped(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = eig.values(i);
        if (f != MatrixFunction::Exp && (!(lambda > 0.0) || !std::isfinite(lambda)))
            throw DomainError("spd_fun: eigenvalue " + std::to_string(lambda) + " is not positive");
        switch (f) {
            case MatrixFunction::Log: mapped(i) = std::log(lambda); break;
            case MatrixFunction::Exp: mapped(i) = std::exp(lambda); break;
            case MatrixFunction::Sqrt: mapped(i) = std::sqrt(lambda); break;
            case MatrixFunction::InvSqrt: mapped(i) = 1.0 / std::sqrt(lambda); break;
            case MatrixFunction::Pow: mapped(i) = std::pow(lambda, power); break;
        }
    }
    Matrix out = eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
    return symmetrize(out);
}

Matrix spd_fun(const Matrix& x, MatrixFunction f, double power) {
    return spd_fun(sym_eig(x), f, power);
}

Matrix from_flat(std::span<const double> flat, std::size_t n) {
    if (flat.size() != n * n)
        throw ContractViolation("from_flat: expected " + std::to_string(n * n) + " entries, got " +
                                std::to_string(flat.size()));
    Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = flat[i * n + j];
    return a;
}

std::vector<double> to_flat(const Matrix& a) {
    std::vector<double> flat(static_cast<std::size_t>(a.rows() * a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            flat[static_cast<std::size_t>(i * a.cols() + j)] = a(i, j);
    return flat;
}

std::size_t order_from_size(std::size_t size) {
    auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(size))));
    return n * n == size ? n : 0;
}

bool is_symmetric(std::span<const double> flat, std::size_t n, double rel_tol) {
    if (flat.size() != n * n) return false;
    double scale = 0.0;
    for (double x : flat) scale = std::max(scale, std::abs(x));
    const double tol = rel_tol * std::max(1.0, scale);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(flat[i * n + j] - flat[j * n + i]) > tol) return false;
    return true;
}

double elementary_symmetric2(const Matrix& a) {
    const Vector lambda = sym_eig(a).values;
    const double tr = lambda.sum();
    return 0.5 * (tr * tr - lambda.squaredNorm());
}

}  // namespace mnash::linalg
