#include "sympl/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sympl/errors.hpp"
#include "sympl/kernels.hpp"

namespace sympl {

namespace {

constexpr int kMaxSweeps = 100;

bool negligible(double apq, double app, double aqq) noexcept {
    const double g = 100.0 * std::abs(apq);
    return (std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) ||
           std::abs(apq) < 1e-300;
}

}  // namespace

SymEigDecomposition sym_eig(const DenseMatrix& m, double tol) {
    if (!m.is_square())
        throw Error(ErrorCode::NotSquare, "sym_eig: matrix is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
    const double norm = frobenius_norm(m);
    const double asym = symmetry_residual(m);
    if (asym > tol * (1.0 + norm))
        throw Error(ErrorCode::NotSymmetric,
                    "sym_eig: ||M - M^T||_F = " + std::to_string(asym) + " exceeds tolerance");

    const std::size_t n = m.rows();
    const auto& k = kernels::active();

    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    DenseMatrix vt = DenseMatrix::identity(n);  // row i holds eigenvector i

    int sweep = 0;
    for (;; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                if (negligible(apq, app, aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                if (sweep >= kMaxSweeps)
                    throw Error(ErrorCode::NoConvergence,
                                "sym_eig: no convergence after " + std::to_string(kMaxSweeps) +
                                    " sweeps");
                rotated = true;
                const double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                k.rot(a.row(p).data(), a.row(q).data(), n, c, s);
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    a(r, p) = a(p, r);
                    a(r, q) = a(q, r);
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;

                k.rot(vt.row(p).data(), vt.row(q).data(), n, c, s);
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymEigDecomposition out;
    out.sweeps = sweep;
    out.eigenvalues.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = a(src, src);
        auto v = vt.row(src);
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[big])) big = i;
        const double sign = v[big] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v[i];
    }
    return out;
}

std::size_t numeric_rank(std::span<const double> eigenvalues, double scale, double tol) {
    const double cutoff = tol * scale;
    return static_cast<std::size_t>(std::count_if(
        eigenvalues.begin(), eigenvalues.end(), [&](double v) { return std::abs(v) > cutoff; }));
}

DenseMatrix reconstruct(const DenseMatrix& vectors, std::span<const double> values) {
    if (vectors.cols() != values.size())
        throw Error(ErrorCode::ShapeMismatch, "reconstruct: eigenvalue count mismatch");
    DenseMatrix scaled = vectors;
    for (std::size_t i = 0; i < scaled.rows(); ++i)
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= values[j];
    return multiply(scaled, transpose(vectors));
}

DenseMatrix spsd_sqrt(const SymEigDecomposition& eig, double frobenius, double tol) {
    const double cutoff = tol * frobenius;
    std::vector<double> roots(eig.eigenvalues.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double lambda = eig.eigenvalues[i];
        if (lambda < -cutoff)
            throw Error(ErrorCode::NotSPSD, "spsd_sqrt: eigenvalue " + std::to_string(lambda) +
                                                " below -tol*||A||_F");
        roots[i] = std::abs(lambda) <= cutoff ? 0.0 : std::sqrt(lambda);
    }
    DenseMatrix r = reconstruct(eig.vectors, roots);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = i + 1; j < r.cols(); ++j) r(i, j) = r(j, i) = 0.5 * (r(i, j) + r(j, i));
    return r;
}

DenseMatrix spsd_sqrt(const DenseMatrix& a, double tol) {
    return spsd_sqrt(sym_eig(a, tol), frobenius_norm(a), tol);
}

}  // namespace sympl
