#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sympl/eigen.hpp"
#include "sympl/matrix.hpp"
#include "sympl/williamson.hpp"

namespace sympl {

/// 2 (d_1 + ... + d_k) over the k smallest symplectic eigenvalues.
double trace_lower_bound(const DenseMatrix& a, std::size_t k, double tol = kDefaultTol);
double trace_lower_bound(const WilliamsonDecomposition& w, std::size_t k);

/// tr(X^T A X).
double trace_value(const DenseMatrix& a, const DenseMatrix& x);

/// [u_1 .. u_k, v_1 .. v_k] taken from the Williamson diagonalizer; lies in
/// Sp(2k, 2n) and attains the lower bound.
DenseMatrix minimizer(const DenseMatrix& a, std::size_t k, double tol = kDefaultTol);
DenseMatrix minimizer(const WilliamsonDecomposition& w, std::size_t k);

/// (1/sqrt 2) [[S, S J_2k^T], [S J_2k^T, S]] for any 2n x 2k matrix S.
DenseMatrix embed(const DenseMatrix& s, std::size_t k);

/// exp(J H) by scaling and squaring with a fixed-order Taylor series. For
/// symmetric H the exponent is Hamiltonian and the result symplectic.
DenseMatrix hamiltonian_exp(const DenseMatrix& h);

/// Symmetric 2n x 2n matrix with entries uniform in [-1, 1], divided by its
/// Frobenius norm when that exceeds one. Deterministic per (seed, stream).
DenseMatrix random_hamiltonian_generator(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Columns (1..k, n+1..n+k) of exp(J H) with H from the generator above.
DenseMatrix random_symplectic(std::size_t n, std::size_t k, std::uint64_t seed,
                              std::uint64_t stream = 0);

struct TraceMinReport {
    std::size_t k = 0;
    double bound = 0.0;
    double minimizer_value = 0.0;
    std::vector<double> samples;
    std::size_t violations = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    double min_sample = 0.0;
    double max_feasibility_residual = 0.0;  // over sampled X
    double minimizer_feasibility_residual = 0.0;
    std::vector<double> spectrum;
};

/// Randomized certificate of min tr(X^T A X) = 2 sum d_j over Sp(2k, 2n).
/// Sample i uses its own stream derived from (seed, i), so the result does not
/// depend on `threads`. A violation is a sample below bound - tol (1 + bound).
TraceMinReport verify_trace_theorem(const DenseMatrix& a, std::size_t k, std::size_t num_samples,
                                    std::uint64_t seed, double tol = kDefaultTol,
                                    unsigned threads = 1);

}  // namespace sympl
