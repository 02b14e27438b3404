#include "sympl/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympl/errors.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

DenseMatrix pencil_form(std::size_t n) {
    const DenseMatrix j = standard_form(n).matrix();
    DenseMatrix out(4 * n, 4 * n);
    out.set_block(0, 2 * n, j);
    out.set_block(2 * n, 0, -1.0 * j);
    return out;
}

Pencil build_pencil(const DenseMatrix& a, double tol) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "build_pencil: matrix is not square");
    if (a.rows() == 0 || a.rows() % 2 != 0)
        throw Error(ErrorCode::OddDimensions, "build_pencil: dimension must be even");
    const auto eig = sym_eig(a, tol);
    if (eig.eigenvalues.front() < -tol * frobenius_norm(a))
        throw Error(ErrorCode::NotSPSD, "build_pencil: matrix is not positive semidefinite");

    Pencil p;
    p.n = a.rows() / 2;
    p.a = a;
    const DenseMatrix blocks[] = {a, a};
    p.stacked = block_diagonal(blocks);
    p.form = pencil_form(p.n);
    return p;
}

PencilSpectrum pencil_eigenvalues(const Pencil& p, double tol) {
    const DenseMatrix root = spsd_sqrt(p.a, tol);
    const DenseMatrix blocks[] = {root, root};
    const DenseMatrix stacked_root = block_diagonal(blocks);
    DenseMatrix m = stacked_root * (p.form * stacked_root);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));
    return {sym_eig(m, tol).eigenvalues};
}

std::vector<Cluster> cluster_values(std::span<const double> sorted, double tol) {
    std::vector<Cluster> out;
    if (sorted.empty()) return out;
    double biggest = 0.0;
    for (double v : sorted) biggest = std::max(biggest, std::abs(v));
    const double gap = tol * std::max(1.0, biggest);

    double sum = sorted[0];
    std::size_t count = 1;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i == sorted.size() || sorted[i] - sorted[i - 1] > gap) {
            out.push_back({sum / static_cast<double>(count), count});
            if (i == sorted.size()) break;
            sum = 0.0;
            count = 0;
        }
        sum += sorted[i];
        ++count;
    }
    return out;
}

MultiplicityCheck check_multiplicities(const PencilSpectrum& spectrum, double tol) {
    MultiplicityCheck out;
    const auto& v = spectrum.values;
    double biggest = 0.0;
    for (double x : v) biggest = std::max(biggest, std::abs(x));
    for (std::size_t i = 0; i < v.size(); ++i)
        out.symmetry_error = std::max(out.symmetry_error, std::abs(v[i] + v[v.size() - 1 - i]));
    out.sign_symmetric = out.symmetry_error <= tol * std::max(1.0, biggest);

    out.positive_clusters = cluster_values(spectrum.nonnegative(), tol);
    out.negative_clusters = cluster_values(spectrum.nonpositive(), tol);
    out.even_multiplicity = true;
    for (const auto& c : out.positive_clusters) out.even_multiplicity &= c.multiplicity % 2 == 0;
    for (const auto& c : out.negative_clusters) out.even_multiplicity &= c.multiplicity % 2 == 0;
    return out;
}

std::vector<double> halved_positive_part(const PencilSpectrum& spectrum) {
    const auto half = spectrum.nonnegative();
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < half.size(); i += 2) out.push_back(0.5 * (half[i] + half[i + 1]));
    return out;
}

ReformulationCheck verify_reformulations(const DenseMatrix& a, std::span<const double> u,
                                         std::span<const double> v, double d, double tol) {
    if (!a.is_square() || a.rows() == 0 || a.rows() % 2 != 0 || u.size() != a.rows() ||
        v.size() != a.rows())
        throw Error(ErrorCode::ShapeMismatch, "verify_reformulations: shape mismatch");
    const std::size_t dim = a.rows();
    const SymplecticForm j(dim / 2);

    // diag(A, A) (x; y) - lambda [[0, J], [-J, 0]] (x; y) = (A x - lambda J y; A y + lambda J x)
    auto stacked_residual = [&](std::span<const double> x, std::span<const double> y, double lambda) {
        auto top = a * x;
        auto bottom = a * y;
        const auto jx = j.apply(x);
        const auto jy = j.apply(y);
        for (std::size_t i = 0; i < dim; ++i) {
            top[i] -= lambda * jy[i];
            bottom[i] += lambda * jx[i];
        }
        return norm2(top) + norm2(bottom);
    };

    std::vector<double> neg_u(u.begin(), u.end());
    for (double& x : neg_u) x = -x;

    ReformulationCheck out;
    out.residuals[0] = stacked_residual(u, v, d);
    out.residuals[1] = stacked_residual(v, u, -d);
    out.residuals[2] = stacked_residual(v, neg_u, d);
    out.residuals[3] = stacked_residual(neg_u, v, -d);
    out.threshold = tol * (1.0 + frobenius_norm(a));
    out.pass = std::all_of(std::begin(out.residuals), std::end(out.residuals),
                           [&](double r) { return r <= out.threshold; });
    return out;
}

std::pair<DenseMatrix, DenseMatrix> jj_eigenstructure(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "jj_eigenstructure needs n >= 1");
    const double h = 1.0 / std::sqrt(2.0);
    DenseMatrix plus(4 * n, 2 * n);
    DenseMatrix minus(4 * n, 2 * n);
    // Row blocks of height n; X1 = X2 = I_n.
    for (std::size_t i = 0; i < n; ++i) {
        plus(i, i) = h;
        plus(3 * n + i, i) = h;
        plus(n + i, n + i) = h;
        plus(2 * n + i, n + i) = -h;

        minus(i, i) = h;
        minus(3 * n + i, i) = -h;
        minus(n + i, n + i) = h;
        minus(2 * n + i, n + i) = h;
    }
    return {plus, minus};
}

}  // namespace sympl
