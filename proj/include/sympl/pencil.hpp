#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sympl/eigen.hpp"
#include "sympl/matrix.hpp"

namespace sympl {

/// The 4n x 4n pencil  diag(A, A) - lambda [[0, J], [-J, 0]].
struct Pencil {
    std::size_t n = 0;
    DenseMatrix a;        // 2n x 2n
    DenseMatrix stacked;  // diag(A, A)
    DenseMatrix form;     // [[0, J_2n], [-J_2n, 0]]; symmetric and involutory
};

Pencil build_pencil(const DenseMatrix& a, double tol = kDefaultTol);

/// [[0, J_2n], [-J_2n, 0]].
DenseMatrix pencil_form(std::size_t n);

struct Cluster {
    double value = 0.0;  // mean of the members
    std::size_t multiplicity = 0;
};

struct PencilSpectrum {
    std::vector<double> values;  // 4n, ascending

    std::span<const double> nonpositive() const { return {values.data(), values.size() / 2}; }
    std::span<const double> nonnegative() const {
        return {values.data() + values.size() / 2, values.size() / 2};
    }
};

/// Eigenvalues of the pencil as the spectrum of the symmetric matrix
/// diag(A, A)^{1/2} form diag(A, A)^{1/2}.
PencilSpectrum pencil_eigenvalues(const Pencil& p, double tol = kDefaultTol);

/// Groups sorted values: a new cluster starts where the gap to the previous
/// value exceeds tol max(1, max |value|).
std::vector<Cluster> cluster_values(std::span<const double> sorted, double tol);

struct MultiplicityCheck {
    bool sign_symmetric = false;  // values == -reverse(values) within tolerance
    bool even_multiplicity = false;
    double symmetry_error = 0.0;
    std::vector<Cluster> positive_clusters;  // clusters of the nonnegative half
    std::vector<Cluster> negative_clusters;
};

/// Every |value| of the pencil spectrum should occur an even number of times
/// on each side and the spectrum should be symmetric about zero.
MultiplicityCheck check_multiplicities(const PencilSpectrum& spectrum, double tol = kDefaultTol);

/// Nonnegative half with each doubled value collapsed: the symplectic spectrum
/// the pencil predicts. Pairs consecutive values; no clustering involved.
std::vector<double> halved_positive_part(const PencilSpectrum& spectrum);

struct ReformulationCheck {
    double residuals[4] = {0.0, 0.0, 0.0, 0.0};
    double threshold = 0.0;
    bool pass = false;
};

/// The four stacked identities an eigenpair (u, v, d) satisfies:
///   (u, v) at d, (v, u) at -d, (v, -u) at d, (-u, v) at -d.
/// Each residual sums the norms of the two halves of diag(A,A) x - lambda form x;
/// pass iff all are within tol (1 + ||A||_F).
ReformulationCheck verify_reformulations(const DenseMatrix& a, std::span<const double> u,
                                         std::span<const double> v, double d,
                                         double tol = kDefaultTol);

/// Unit-norm eigenvectors of the pencil form: first element for eigenvalue +1,
/// second for -1, each 4n x 2n.
std::pair<DenseMatrix, DenseMatrix> jj_eigenstructure(std::size_t n);

}  // namespace sympl
