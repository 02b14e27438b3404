#include "sympl/trace_min.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "sympl/errors.hpp"
#include "sympl/kernels.hpp"
#include "sympl/symplectic.hpp"

namespace sympl {

namespace {

constexpr int kTaylorOrder = 16;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in [-1, 1); the conversion is spelled out so draws do not depend
// on the standard library's distribution implementation.
double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k > n)
        throw Error(ErrorCode::KOutOfRange,
                    "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
}

}  // namespace

double trace_lower_bound(const WilliamsonDecomposition& w, std::size_t k) {
    check_k(k, w.d.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += w.d[j];
    return 2.0 * sum;
}

double trace_lower_bound(const DenseMatrix& a, std::size_t k, double tol) {
    if (a.is_square() && a.rows() % 2 == 0) check_k(k, a.rows() / 2);
    return trace_lower_bound(williamson(a, tol), k);
}

double trace_value(const DenseMatrix& a, const DenseMatrix& x) {
    if (!a.is_square() || x.rows() != a.rows())
        throw Error(ErrorCode::ShapeMismatch, "trace_value: X must have as many rows as A");
    const DenseMatrix ax = a * x;
    return kernels::active().dot(ax.data().data(), x.data().data(), x.size());
}

DenseMatrix minimizer(const WilliamsonDecomposition& w, std::size_t k) {
    const std::size_t n = w.d.size();
    check_k(k, n);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(j);
    for (std::size_t j = 0; j < k; ++j) cols.push_back(n + j);
    return w.s.select_columns(cols);
}

DenseMatrix minimizer(const DenseMatrix& a, std::size_t k, double tol) {
    if (a.is_square() && a.rows() % 2 == 0) check_k(k, a.rows() / 2);
    return minimizer(williamson(a, tol), k);
}

DenseMatrix embed(const DenseMatrix& s, std::size_t k) {
    if (s.cols() != 2 * k || k == 0 || s.rows() % 2 != 0)
        throw Error(ErrorCode::ShapeMismatch,
                    "embed: expected a 2n x " + std::to_string(2 * k) + " matrix");
    // S J_2k^T = [S2, -S1] for S = [S1, S2].
    DenseMatrix sjt(s.rows(), 2 * k);
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) {
            sjt(i, j) = s(i, k + j);
            sjt(i, k + j) = -s(i, j);
        }
    DenseMatrix x(2 * s.rows(), 4 * k);
    x.set_block(0, 0, s);
    x.set_block(0, 2 * k, sjt);
    x.set_block(s.rows(), 0, sjt);
    x.set_block(s.rows(), 2 * k, s);
    x *= 1.0 / std::sqrt(2.0);
    return x;
}

DenseMatrix hamiltonian_exp(const DenseMatrix& h) {
    if (!h.is_square() || h.rows() == 0 || h.rows() % 2 != 0)
        throw Error(ErrorCode::OddDimensions, "hamiltonian_exp: H must be 2n x 2n");
    const std::size_t dim = h.rows();
    DenseMatrix x = standard_form(dim / 2).apply(h);

    int squarings = 0;
    double norm = frobenius_norm(x);
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    x *= std::ldexp(1.0, -squarings);

    // Horner form of sum_{j <= order} X^j / j!.
    const DenseMatrix eye = DenseMatrix::identity(dim);
    DenseMatrix e = eye;
    for (int j = kTaylorOrder; j >= 1; --j) {
        e = x * e;
        e *= 1.0 / j;
        e += eye;
    }
    for (int s = 0; s < squarings; ++s) e = e * e;
    return e;
}

DenseMatrix random_hamiltonian_generator(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "random_hamiltonian_generator: n >= 1");
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(stream + 0x51ed270b27b4a1f3ULL)));
    const std::size_t dim = 2 * n;
    DenseMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) h(i, j) = h(j, i) = uniform_pm1(rng);
    const double norm = frobenius_norm(h);
    if (norm > 1.0) h *= 1.0 / norm;
    return h;
}

DenseMatrix random_symplectic(std::size_t n, std::size_t k, std::uint64_t seed, std::uint64_t stream) {
    check_k(k, n);
    const DenseMatrix full = hamiltonian_exp(random_hamiltonian_generator(n, seed, stream));
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(j);
    for (std::size_t j = 0; j < k; ++j) cols.push_back(n + j);
    return full.select_columns(cols);
}

TraceMinReport verify_trace_theorem(const DenseMatrix& a, std::size_t k, std::size_t num_samples,
                                    std::uint64_t seed, double tol, unsigned threads) {
    if (a.is_square() && a.rows() % 2 == 0 && a.rows() > 0) check_k(k, a.rows() / 2);
    const WilliamsonDecomposition w = williamson(a, tol);
    const std::size_t n = w.d.size();

    TraceMinReport report;
    report.k = k;
    report.seed = seed;
    report.tol = tol;
    report.spectrum = w.d;
    report.bound = trace_lower_bound(w, k);
    const DenseMatrix best = minimizer(w, k);
    report.minimizer_value = trace_value(a, best);
    report.minimizer_feasibility_residual = is_symplectic(best, tol).residual;

    report.samples.assign(num_samples, 0.0);
    std::vector<double> feasibility(num_samples, 0.0);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const DenseMatrix x = random_symplectic(n, k, seed, i);
            report.samples[i] = trace_value(a, x);
            feasibility[i] = is_symplectic(x, tol).residual;
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(num_samples ? num_samples : 1)));
    if (threads == 1) {
        run(0, num_samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (num_samples + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(num_samples, t * chunk);
            const std::size_t end = std::min(num_samples, begin + chunk);
            pool.emplace_back(run, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    const double floor = report.bound - tol * (1.0 + report.bound);
    report.min_sample = num_samples ? *std::min_element(report.samples.begin(), report.samples.end())
                                    : report.minimizer_value;
    report.violations = static_cast<std::size_t>(std::count_if(
        report.samples.begin(), report.samples.end(), [&](double v) { return v < floor; }));
    report.max_feasibility_residual =
        num_samples ? *std::max_element(feasibility.begin(), feasibility.end()) : 0.0;
    return report;
}

}  // namespace sympl
