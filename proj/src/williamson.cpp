#include "sympl/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sympl/errors.hpp"
#include "sympl/kernels.hpp"

namespace sympl {

namespace {

void require_even_square(const DenseMatrix& a, const char* who) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, std::string(who) + ": matrix is not square");
    if (a.rows() == 0 || a.rows() % 2 != 0)
        throw Error(ErrorCode::OddDimensions,
                    std::string(who) + ": dimension " + std::to_string(a.rows()) + " is not 2n");
}

// Removes the components of x along the (orthonormal) vectors in basis.
void project_out(std::vector<double>& x, const std::vector<std::vector<double>>& basis) {
    const auto& k = kernels::active();
    for (const auto& b : basis) k.axpy(-k.dot(b.data(), x.data(), x.size()), b.data(), x.data(), x.size());
}

void normalize(std::vector<double>& x) {
    const double nrm = norm2(x);
    for (double& v : x) v /= nrm;
}

struct Block {
    double value;
    std::vector<double> first;
    std::vector<double> second;
};

}  // namespace

DenseMatrix skew_core(const DenseMatrix& a, double tol) {
    require_even_square(a, "skew_core");
    const DenseMatrix root = spsd_sqrt(a, tol);
    const SymplecticForm j(a.rows() / 2);
    DenseMatrix k = root * j.apply(root);
    for (std::size_t r = 0; r < k.rows(); ++r) {
        k(r, r) = 0.0;
        for (std::size_t c = r + 1; c < k.cols(); ++c) {
            const double v = 0.5 * (k(r, c) - k(c, r));
            k(r, c) = v;
            k(c, r) = -v;
        }
    }
    return k;
}

SkewSchurForm skew_schur(const DenseMatrix& k, double tol, std::optional<std::size_t> zero_blocks) {
    require_even_square(k, "skew_schur");
    const double knorm = frobenius_norm(k);
    if (skew_residual(k) > tol * (1.0 + knorm))
        throw Error(ErrorCode::NotSkewSymmetric, "skew_schur: ||K + K^T||_F exceeds tolerance");

    const std::size_t dim = k.rows();
    const std::size_t n = dim / 2;
    const auto eig = sym_eig(multiply_transposed_left(k, k), tol);

    std::vector<std::vector<double>> vecs(dim);
    std::vector<double> image_norm(dim);
    double dmax = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        vecs[i] = eig.vectors.column(i);
        image_norm[i] = norm2(k * std::span<const double>(vecs[i]));
        dmax = std::max(dmax, image_norm[i]);
    }

    std::size_t zeros = 0;
    if (zero_blocks) {
        if (*zero_blocks > n)
            throw Error(ErrorCode::InvalidArgument, "skew_schur: more zero blocks than n");
        zeros = *zero_blocks;
    } else {
        const double cutoff = tol * std::max(1.0, dmax);
        const auto small = static_cast<std::size_t>(
            std::count_if(image_norm.begin(), image_norm.end(), [&](double v) { return v <= cutoff; }));
        zeros = (small + 1) / 2;
    }

    std::vector<std::vector<double>> chosen(vecs.begin(),
                                            vecs.begin() + static_cast<std::ptrdiff_t>(2 * zeros));
    std::vector<bool> used(dim, false);
    std::fill(used.begin(), used.begin() + static_cast<std::ptrdiff_t>(2 * zeros), true);

    std::vector<Block> blocks;
    while (chosen.size() < dim) {
        // First unused eigenvector (ascending) with a substantial component
        // outside the blocks built so far; otherwise the largest one.
        std::size_t pick = dim;
        double pick_norm = -1.0;
        std::vector<double> pick_vec;
        for (std::size_t i = 0; i < dim; ++i) {
            if (used[i]) continue;
            std::vector<double> r = vecs[i];
            project_out(r, chosen);
            const double rn = norm2(r);
            if (rn > pick_norm) {
                pick = i;
                pick_norm = rn;
                pick_vec = std::move(r);
            }
            if (rn >= 0.5) break;
        }
        if (pick == dim || pick_norm <= 0.0)
            throw Error(ErrorCode::NoConvergence, "skew_schur: ran out of independent directions");
        used[pick] = true;

        std::vector<double> q = std::move(pick_vec);
        normalize(q);
        project_out(q, chosen);
        normalize(q);

        std::vector<double> p = k * std::span<const double>(q);
        for (double& v : p) v = -v;
        chosen.push_back(q);
        if (norm2(p) <= 1e-300) {
            throw Error(ErrorCode::NoConvergence,
                        "skew_schur: zero direction outside the designated kernel");
        }
        project_out(p, chosen);
        normalize(p);
        chosen.push_back(p);

        const auto kp = k * std::span<const double>(p);
        const double value = kernels::active().dot(q.data(), kp.data(), dim);
        blocks.push_back({value, std::move(q), std::move(p)});
    }

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const Block& x, const Block& y) { return x.value < y.value; });

    SkewSchurForm out;
    out.q = DenseMatrix(dim, dim);
    out.block_values.assign(n, 0.0);
    for (std::size_t b = 0; b < zeros; ++b) {
        out.q.set_column(2 * b, vecs[2 * b]);
        out.q.set_column(2 * b + 1, vecs[2 * b + 1]);
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t slot = zeros + b;
        out.q.set_column(2 * slot, blocks[b].first);
        out.q.set_column(2 * slot + 1, blocks[b].second);
        out.block_values[slot] = blocks[b].value;
    }
    return out;
}

WilliamsonDecomposition williamson(const DenseMatrix& a, double tol) {
    require_even_square(a, "williamson");
    const std::size_t dim = a.rows();
    const std::size_t n = dim / 2;
    const double norm = frobenius_norm(a);

    const auto eig = sym_eig(a, tol);
    const KernelReport kernel = kernel_report(a, eig, tol);
    if (kernel.classification == KernelClass::Isotropic)
        throw Error(ErrorCode::IsotropicKernel,
                    "williamson: kernel of dimension " + std::to_string(kernel.dim) +
                        " is isotropic; no Williamson diagonal form exists");
    if (kernel.classification == KernelClass::MixedDegenerate)
        throw Error(ErrorCode::MixedDegenerateKernel,
                    "williamson: kernel of dimension " + std::to_string(kernel.dim) +
                        " is neither symplectic nor isotropic; no Williamson diagonal form exists");

    const SymplecticForm j(n);
    WilliamsonDecomposition out;
    out.m = kernel.dim / 2;
    out.d.assign(n, 0.0);

    if (out.m == n) {
        out.zero_matrix = true;
        out.s = DenseMatrix::identity(dim);
    } else {
        const DenseMatrix root = spsd_sqrt(eig, norm, tol);
        DenseMatrix k = root * j.apply(root);
        for (std::size_t r = 0; r < dim; ++r) {
            k(r, r) = 0.0;
            for (std::size_t c = r + 1; c < dim; ++c) {
                const double v = 0.5 * (k(r, c) - k(c, r));
                k(r, c) = v;
                k(c, r) = -v;
            }
        }
        const SkewSchurForm schur = skew_schur(k, tol, out.m);
        const DenseMatrix jroot = j.apply(root);
        const DenseMatrix& w = *kernel.symplectic_basis;

        // With Z = Q P, columns 2i and 2i+1 of Q are the i-th columns of the
        // two halves of Z. Nonzero blocks give
        //   first half:  J A^{1/2} Z2[:, i] / sqrt(d_i)
        //   second half: -J A^{1/2} Z1[:, i] / sqrt(d_i)
        out.s = DenseMatrix(dim, dim);
        for (std::size_t i = 0; i < out.m; ++i) {
            out.s.set_column(i, w.column(i));
            out.s.set_column(n + i, w.column(out.m + i));
        }
        for (std::size_t i = out.m; i < n; ++i) {
            const double di = schur.block_values[i];
            out.d[i] = di;
            const double scale = 1.0 / std::sqrt(di);
            auto first = jroot * std::span<const double>(schur.q.column(2 * i + 1));
            auto second = jroot * std::span<const double>(schur.q.column(2 * i));
            for (double& v : first) v *= scale;
            for (double& v : second) v *= -scale;
            out.s.set_column(i, first);
            out.s.set_column(n + i, second);
        }
    }

    std::vector<double> dd(out.d);
    dd.insert(dd.end(), out.d.begin(), out.d.end());
    out.residual_diag =
        frobenius_norm(multiply_transposed_left(out.s, a * out.s) - DenseMatrix::diagonal(dd));
    out.residual_sympl = frobenius_norm(symplectic_gram(out.s) - j.matrix());
    return out;
}

std::vector<double> symplectic_spectrum(const DenseMatrix& a, double tol) {
    return williamson(a, tol).d;
}

double eigenpair_residual(const DenseMatrix& a, std::span<const double> u,
                          std::span<const double> v, double d) {
    if (!a.is_square() || a.rows() % 2 != 0 || u.size() != a.rows() || v.size() != a.rows())
        throw Error(ErrorCode::ShapeMismatch, "eigenpair_residual: shape mismatch");
    const SymplecticForm j(a.rows() / 2);
    auto au = a * u;
    auto av = a * v;
    const auto ju = j.apply(u);
    const auto jv = j.apply(v);
    for (std::size_t i = 0; i < au.size(); ++i) {
        au[i] -= d * jv[i];
        av[i] += d * ju[i];
    }
    return norm2(au) + norm2(av);
}

EigenpairResidual verify_eigenpairs(const DenseMatrix& a, const DenseMatrix& s,
                                    std::span<const double> d, double tol) {
    if (!a.is_square() || a.rows() == 0 || a.rows() % 2 != 0 || s.rows() != a.rows() ||
        s.cols() % 2 != 0 || s.cols() / 2 != d.size())
        throw Error(ErrorCode::ShapeMismatch, "verify_eigenpairs: shapes of A, S and d disagree");
    const std::size_t k = d.size();
    EigenpairResidual out;
    out.per_pair.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.per_pair[i] = eigenpair_residual(a, s.column(i), s.column(k + i), d[i]);
        out.max_residual = std::max(out.max_residual, out.per_pair[i]);
    }
    out.threshold = tol * (1.0 + frobenius_norm(a));
    out.pass = out.max_residual <= out.threshold;
    return out;
}

}  // namespace sympl
