#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sympl/eigen.hpp"
#include "sympl/matrix.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

/// Real Schur form of a skew-symmetric K: Q^T K Q is block diagonal with
/// 2x2 blocks [[0, d_j], [-d_j, 0]], zero blocks first, then d_j ascending.
struct SkewSchurForm {
    DenseMatrix q;
    std::vector<double> block_values;
};

/// A^{1/2} J A^{1/2} for a symmetric spsd A of size 2n.
DenseMatrix skew_core(const DenseMatrix& a, double tol = kDefaultTol);

/// Schur form of a skew-symmetric matrix of even size, built from the
/// eigenvectors of K^T K = -K^2: each unit vector q with d = ||K q|| > 0 is
/// paired with -K q / d.
///
/// Blocks with d <= tol max(1, d_max) count as zero unless `zero_blocks` pins
/// their number, in which case the eigenvectors of the 2 * zero_blocks
/// smallest eigenvalues form the zero part.
SkewSchurForm skew_schur(const DenseMatrix& k, double tol = kDefaultTol,
                         std::optional<std::size_t> zero_blocks = std::nullopt);

/// Williamson diagonal form S^T A S = diag(D, D) of a symmetric spsd matrix
/// whose kernel is symplectic. Columns of S are ordered [W1 S1 W2 S2]: the
/// first m columns of each half span the kernel.
struct WilliamsonDecomposition {
    DenseMatrix s;
    std::vector<double> d;  // ascending; the first m are zero
    std::size_t m = 0;
    double residual_diag = 0.0;   // ||S^T A S - diag(D, D)||_F
    double residual_sympl = 0.0;  // ||S^T J S - J||_F
    bool zero_matrix = false;     // A == 0 at tolerance: S = I, m = n
};

WilliamsonDecomposition williamson(const DenseMatrix& a, double tol = kDefaultTol);

/// Symplectic eigenvalues d_1 <= ... <= d_n.
std::vector<double> symplectic_spectrum(const DenseMatrix& a, double tol = kDefaultTol);

struct EigenpairResidual {
    std::vector<double> per_pair;  // ||A u_j - d_j J v_j|| + ||A v_j + d_j J u_j||
    double max_residual = 0.0;
    double threshold = 0.0;        // tol (1 + ||A||_F)
    bool pass = false;
};

/// Checks A u_j = d_j J v_j and A v_j = -d_j J u_j with u_j = S[:, j] and
/// v_j = S[:, k + j] for a 2n x 2k matrix S and d of length k.
EigenpairResidual verify_eigenpairs(const DenseMatrix& a, const DenseMatrix& s,
                                    std::span<const double> d, double tol = kDefaultTol);

/// ||A u - d J v|| + ||A v + d J u|| for a single pair.
double eigenpair_residual(const DenseMatrix& a, std::span<const double> u,
                          std::span<const double> v, double d);

}  // namespace sympl
