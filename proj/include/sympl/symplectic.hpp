#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "sympl/eigen.hpp"
#include "sympl/matrix.hpp"

namespace sympl {

/// The standard form J_2n = [[0, I_n], [-I_n, 0]].
class SymplecticForm {
public:
    explicit SymplecticForm(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return 2 * n_; }

    DenseMatrix matrix() const;

    /// J x without forming J: (x_lower, -x_upper).
    std::vector<double> apply(std::span<const double> x) const;
    /// J M applied column-wise.
    DenseMatrix apply(const DenseMatrix& m) const;
    /// x^T J y.
    double pairing(std::span<const double> x, std::span<const double> y) const;

private:
    std::size_t n_;
};

SymplecticForm standard_form(std::size_t n);

struct SymplecticityCheck {
    bool symplectic = false;
    double residual = 0.0;  // ||S^T J_2n S - J_2k||_F
};

/// Tests S in Sp(2k, 2n): pass iff residual <= tol (1 + ||S||_F^2).
SymplecticityCheck is_symplectic(const DenseMatrix& s, double tol = kDefaultTol);

/// S^T J_2n S for a 2n x c matrix (c need not be even).
DenseMatrix symplectic_gram(const DenseMatrix& s);

/// Symplectic Gram-Schmidt on the columns of v. Returns W = [W1 W2] whose
/// column pairs (w_i, w_{m+i}) satisfy w_i^T J w_{m+i} = 1 and span the same
/// subspace. Each step pivots on the pair with the largest |x^T J y|.
///
/// Throws RankDeficientInput or IsotropicInput (no remaining pair pairs
/// nondegenerately, i.e. the span is not symplectic).
DenseMatrix symplectic_gram_schmidt(const DenseMatrix& v, double tol = kDefaultTol);

enum class KernelClass { Trivial, Symplectic, Isotropic, MixedDegenerate };

std::string_view to_string(KernelClass c) noexcept;

struct KernelReport {
    std::size_t dim = 0;
    DenseMatrix basis;  // 2n x dim, orthonormal columns
    KernelClass classification = KernelClass::Trivial;
    std::optional<DenseMatrix> symplectic_basis;  // [W1 W2], present for Trivial/Symplectic
    double kernel_residual = 0.0;                 // ||A basis||_F
    double gram_min_singular = 0.0;               // of basis^T J basis; 0 when dim == 0
    double gram_max_singular = 0.0;
};

/// Kernel of a symmetric spsd A of even size, read off the eigenvectors whose
/// eigenvalues are within tol ||A||_F of zero, and its symplectic type.
KernelReport kernel_report(const DenseMatrix& a, double tol = kDefaultTol);

/// Variant reusing a decomposition of `a` already at hand.
KernelReport kernel_report(const DenseMatrix& a, const SymEigDecomposition& eig, double tol);

/// Classifies the span of an orthonormal basis.
KernelClass classify_subspace(const DenseMatrix& basis, double tol, double* min_singular = nullptr,
                              double* max_singular = nullptr);

}  // namespace sympl
