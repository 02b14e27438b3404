#include "sympl/symplectic.hpp"

#include <cmath>
#include <string>

#include "sympl/errors.hpp"
#include "sympl/kernels.hpp"

namespace sympl {

SymplecticForm::SymplecticForm(std::size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "symplectic form needs n >= 1");
}

DenseMatrix SymplecticForm::matrix() const {
    DenseMatrix j(2 * n_, 2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        j(i, n_ + i) = 1.0;
        j(n_ + i, i) = -1.0;
    }
    return j;
}

std::vector<double> SymplecticForm::apply(std::span<const double> x) const {
    if (x.size() != 2 * n_) throw Error(ErrorCode::ShapeMismatch, "J x: vector length mismatch");
    std::vector<double> y(2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        y[i] = x[n_ + i];
        y[n_ + i] = -x[i];
    }
    return y;
}

DenseMatrix SymplecticForm::apply(const DenseMatrix& m) const {
    if (m.rows() != 2 * n_) throw Error(ErrorCode::ShapeMismatch, "J M: row count mismatch");
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < n_; ++i) {
        auto top = out.row(i);
        auto bottom = out.row(n_ + i);
        auto src_top = m.row(i);
        auto src_bottom = m.row(n_ + i);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            top[c] = src_bottom[c];
            bottom[c] = -src_top[c];
        }
    }
    return out;
}

double SymplecticForm::pairing(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != 2 * n_ || y.size() != 2 * n_)
        throw Error(ErrorCode::ShapeMismatch, "x^T J y: vector length mismatch");
    const auto& k = kernels::active();
    return k.dot(x.data(), y.data() + n_, n_) - k.dot(x.data() + n_, y.data(), n_);
}

SymplecticForm standard_form(std::size_t n) { return SymplecticForm(n); }

DenseMatrix symplectic_gram(const DenseMatrix& s) {
    if (s.rows() % 2 != 0 || s.rows() == 0)
        throw Error(ErrorCode::OddDimensions, "symplectic Gram matrix needs an even row count");
    const SymplecticForm j(s.rows() / 2);
    return multiply_transposed_left(s, j.apply(s));
}

SymplecticityCheck is_symplectic(const DenseMatrix& s, double tol) {
    if (s.rows() % 2 != 0 || s.cols() % 2 != 0 || s.rows() == 0 || s.cols() == 0)
        throw Error(ErrorCode::OddDimensions,
                    "is_symplectic: shape " + std::to_string(s.rows()) + "x" +
                        std::to_string(s.cols()) + " is not 2n x 2k");
    if (s.cols() > s.rows())
        throw Error(ErrorCode::ShapeMismatch, "is_symplectic: more columns than rows");
    DenseMatrix residual = symplectic_gram(s) - standard_form(s.cols() / 2).matrix();
    SymplecticityCheck out;
    out.residual = frobenius_norm(residual);
    const double scale = frobenius_norm(s);
    out.symplectic = out.residual <= tol * (1.0 + scale * scale);
    return out;
}

DenseMatrix symplectic_gram_schmidt(const DenseMatrix& v, double tol) {
    if (v.rows() % 2 != 0 || v.rows() == 0)
        throw Error(ErrorCode::OddDimensions, "symplectic Gram-Schmidt needs vectors in R^{2n}");
    const std::size_t count = v.cols();
    const SymplecticForm j(v.rows() / 2);
    if (count == 0) return DenseMatrix(v.rows(), 0);

    const auto gram = sym_eig(multiply_transposed_left(v, v), tol);
    const double largest = gram.eigenvalues.back();
    if (largest <= 0.0 || gram.eigenvalues.front() <= tol * largest)
        throw Error(ErrorCode::RankDeficientInput,
                    "symplectic Gram-Schmidt: input columns are numerically dependent");

    std::vector<std::vector<double>> remaining;
    double scale = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
        remaining.push_back(v.column(c));
        scale = std::max(scale, norm2(remaining.back()));
    }
    const double cutoff = tol * scale * scale;

    std::vector<std::vector<double>> first, second;
    while (!remaining.empty()) {
        std::size_t bi = 0, bj = 0;
        double best = 0.0;
        for (std::size_t a = 0; a < remaining.size(); ++a)
            for (std::size_t b = a + 1; b < remaining.size(); ++b) {
                const double g = j.pairing(remaining[a], remaining[b]);
                if (std::abs(g) > std::abs(best)) {
                    best = g;
                    bi = a;
                    bj = b;
                }
            }
        if (remaining.size() < 2 || std::abs(best) <= cutoff)
            throw Error(ErrorCode::IsotropicInput,
                        "symplectic Gram-Schmidt: " + std::to_string(remaining.size()) +
                            " vector(s) left with no nondegenerate partner");

        const double root = std::sqrt(std::abs(best));
        std::vector<double> u = remaining[bi];
        std::vector<double> w = remaining[bj];
        for (double& x : u) x /= root;
        for (double& x : w) x *= (best < 0.0 ? -1.0 : 1.0) / root;

        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(bj));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(bi));

        // Make every leftover vector J-orthogonal to the new pair.
        const auto& k = kernels::active();
        for (auto& x : remaining) {
            const double xu = j.pairing(x, u);
            const double xw = j.pairing(x, w);
            k.axpy(xu, w.data(), x.data(), x.size());
            k.axpy(-xw, u.data(), x.data(), x.size());
        }
        first.push_back(std::move(u));
        second.push_back(std::move(w));
    }

    const std::size_t m = first.size();
    DenseMatrix out(v.rows(), 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        out.set_column(i, first[i]);
        out.set_column(m + i, second[i]);
    }
    return out;
}

std::string_view to_string(KernelClass c) noexcept {
    switch (c) {
        case KernelClass::Trivial: return "Trivial";
        case KernelClass::Symplectic: return "Symplectic";
        case KernelClass::Isotropic: return "Isotropic";
        case KernelClass::MixedDegenerate: return "MixedDegenerate";
    }
    return "Unknown";
}

KernelClass classify_subspace(const DenseMatrix& basis, double tol, double* min_singular,
                              double* max_singular) {
    if (min_singular) *min_singular = 0.0;
    if (max_singular) *max_singular = 0.0;
    if (basis.cols() == 0) return KernelClass::Trivial;

    // Singular values of the skew Gram matrix G, taken as ||G q|| for the
    // eigenvectors q of G^T G so tiny values are not lost to the square.
    const DenseMatrix g = symplectic_gram(basis);
    const auto eig = sym_eig(multiply_transposed_left(g, g), tol);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t c = 0; c < eig.vectors.cols(); ++c) {
        const auto q = eig.vectors.column(c);
        const double sigma = norm2(g * std::span<const double>(q));
        lo = std::min(lo, sigma);
        hi = std::max(hi, sigma);
    }
    if (min_singular) *min_singular = lo;
    if (max_singular) *max_singular = hi;

    if (hi <= tol) return KernelClass::Isotropic;
    if (basis.cols() % 2 == 0 && lo > tol) return KernelClass::Symplectic;
    return KernelClass::MixedDegenerate;
}

KernelReport kernel_report(const DenseMatrix& a, const SymEigDecomposition& eig, double tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "kernel_report: matrix is not square");
    if (a.rows() % 2 != 0 || a.rows() == 0)
        throw Error(ErrorCode::OddDimensions, "kernel_report: dimension must be even");
    const double norm = frobenius_norm(a);
    const double cutoff = tol * norm;
    if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -cutoff)
        throw Error(ErrorCode::NotSPSD, "kernel_report: smallest eigenvalue " +
                                            std::to_string(eig.eigenvalues.front()) +
                                            " is below -tol*||A||_F");

    const std::size_t size = a.rows();
    const std::size_t rank = numeric_rank(eig.eigenvalues, norm, tol);
    KernelReport report;
    report.dim = size - rank;
    std::vector<std::size_t> idx;
    for (std::size_t c = 0; c < size; ++c)
        if (std::abs(eig.eigenvalues[c]) <= cutoff) idx.push_back(c);
    report.basis = eig.vectors.select_columns(idx);
    report.kernel_residual = frobenius_norm(a * report.basis);
    report.classification = classify_subspace(report.basis, tol, &report.gram_min_singular,
                                              &report.gram_max_singular);
    if (report.classification == KernelClass::Trivial)
        report.symplectic_basis = DenseMatrix(size, 0);
    else if (report.classification == KernelClass::Symplectic)
        report.symplectic_basis = symplectic_gram_schmidt(report.basis, tol);
    return report;
}

KernelReport kernel_report(const DenseMatrix& a, double tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "kernel_report: matrix is not square");
    if (a.rows() % 2 != 0 || a.rows() == 0)
        throw Error(ErrorCode::OddDimensions, "kernel_report: dimension must be even");
    return kernel_report(a, sym_eig(a, tol), tol);
}

}  // namespace sympl
