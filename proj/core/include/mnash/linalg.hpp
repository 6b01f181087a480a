#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace mnash::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Smallest eigenvalue a chart point of the SPD manifold may have.
inline constexpr double kPdEpsilon = 1e-12;

/// Eigenvalues in descending order, eigenvectors as matching columns.
struct SymEig {
    Vector values;
    Matrix vectors;
};

/// Cyclic Jacobi eigensolver. Input is symmetrized first; sweeps visit (p, q) pairs
/// in row order so results are reproducible bit for bit.
SymEig sym_eig(const Matrix& a);

enum class MatrixFunction { Log, Exp, Sqrt, InvSqrt, Pow };

/// Q f(Λ) Qᵀ. `power` is only read for MatrixFunction::Pow.
/// Log, Sqrt, InvSqrt and Pow throw DomainError unless every eigenvalue is positive and finite.
Matrix spd_fun(const Matrix& x, MatrixFunction f, double power = 1.0);
Matrix spd_fun(const SymEig& eig, MatrixFunction f, double power = 1.0);

Matrix symmetrize(const Matrix& a);

/// Row-major flat layout, the chart used for every matrix manifold.
Matrix from_flat(std::span<const double> flat, std::size_t n);
std::vector<double> to_flat(const Matrix& a);

/// Order of a square matrix stored flat, or 0 if the size is not a perfect square.
std::size_t order_from_size(std::size_t size);

bool is_symmetric(std::span<const double> flat, std::size_t n, double rel_tol = 1e-10);

/// Second elementary symmetric polynomial of the eigenvalues, (tr² − tr(A²))/2.
double elementary_symmetric2(const Matrix& a);

}  // namespace mnash::linalg
