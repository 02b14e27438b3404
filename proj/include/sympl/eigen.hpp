#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sympl/matrix.hpp"

namespace sympl {

inline constexpr double kDefaultTol = 1e-10;

struct SymEigDecomposition {
    std::vector<double> eigenvalues;  // ascending
    DenseMatrix vectors;              // column j pairs with eigenvalues[j]
    int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix. Eigenvalues come back
/// ascending, ties in the order the diagonal settled in; each eigenvector is
/// signed so its largest-magnitude entry is positive.
///
/// Throws NotSquare, NotSymmetric (when ||M - M^T||_F > tol (1 + ||M||_F)) or
/// NoConvergence.
SymEigDecomposition sym_eig(const DenseMatrix& m, double tol = kDefaultTol);

/// Number of |lambda| strictly above tol * scale.
std::size_t numeric_rank(std::span<const double> eigenvalues, double scale, double tol);

/// Unique symmetric positive-semidefinite square root.
///
/// Eigenvalues with |lambda| <= tol ||A||_F are treated as exact zeros, so the
/// result shares its kernel with `a` at that cutoff. Throws NotSPSD when an
/// eigenvalue lies below -tol ||A||_F.
DenseMatrix spsd_sqrt(const DenseMatrix& a, double tol = kDefaultTol);

/// Same as spsd_sqrt but reuses an existing decomposition of `a`.
DenseMatrix spsd_sqrt(const SymEigDecomposition& eig, double frobenius, double tol);

/// V diag(values) V^T.
DenseMatrix reconstruct(const DenseMatrix& vectors, std::span<const double> values);

}  // namespace sympl
