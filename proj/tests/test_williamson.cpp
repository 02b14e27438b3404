#include <doctest.h>

#include <cmath>

#include "sympl/errors.hpp"
#include "sympl/pencil.hpp"
#include "sympl/williamson.hpp"
#include "test_support.hpp"

using namespace sympl;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidArgument;
}

DenseMatrix diag(std::initializer_list<double> v) {
    return DenseMatrix::diagonal(std::vector<double>(v));
}

// Q^T K Q against the expected block-diagonal form.
double schur_residual(const DenseMatrix& k, const SkewSchurForm& f) {
    const std::size_t n = f.block_values.size();
    DenseMatrix expected(2 * n, 2 * n);
    for (std::size_t b = 0; b < n; ++b) {
        expected(2 * b, 2 * b + 1) = f.block_values[b];
        expected(2 * b + 1, 2 * b) = -f.block_values[b];
    }
    return frobenius_norm(multiply_transposed_left(f.q, k * f.q) - expected);
}

void check_decomposition(const DenseMatrix& a, const WilliamsonDecomposition& w, double tol) {
    const std::size_t n = w.d.size();
    const double snorm = frobenius_norm(w.s);
    CHECK(is_symplectic(w.s, tol).symplectic);
    CHECK(w.residual_sympl <= tol * (1.0 + snorm * snorm));
    CHECK(w.residual_diag <= tol * (1.0 + frobenius_norm(a)));
    CHECK(std::is_sorted(w.d.begin(), w.d.end()));
    for (std::size_t j = 0; j < n; ++j) {
        if (j < w.m) CHECK(w.d[j] == 0.0);
        else CHECK(w.d[j] > 0.0);
    }
}

}  // namespace

TEST_CASE("skew_core examples") {
    for (std::size_t n = 1; n <= 3; ++n)
        CHECK(frobenius_norm(skew_core(DenseMatrix::identity(2 * n)) - standard_form(n).matrix()) <=
              1e-15);
    // diag(2, 1): A^{1/2} = diag(sqrt 2, 1).
    const DenseMatrix k = skew_core(diag({2, 1}));
    CHECK(k(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(k(1, 0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(k(0, 0) == 0.0);
    CHECK(skew_core(DenseMatrix(4, 4)) == DenseMatrix(4, 4));
}

TEST_CASE("skew_core rank matches the kernel on random symplectic-kernel input") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 2 + seed % 4;
        const auto c = testing::random_spsd_roundtrip(n, seed);
        const DenseMatrix k = skew_core(c.a);
        CHECK(skew_residual(k) == 0.0);
        const auto e = sym_eig(multiply_transposed_left(k, k));
        // Singular values of K are sqrt of these; rank via the value cutoff.
        std::size_t rank = 0;
        for (double v : e.eigenvalues) rank += std::sqrt(std::max(v, 0.0)) > 1e-6 ? 1 : 0;
        CHECK(rank == 2 * (n - c.m));
    }
}

TEST_CASE("skew_schur examples") {
    SUBCASE("already in form") {
        const auto f = skew_schur(DenseMatrix{{0, 2}, {-2, 0}});
        REQUIRE(f.block_values.size() == 1);
        CHECK(f.block_values[0] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(frobenius_norm(f.q - DenseMatrix::identity(2)) <= 1e-15);
    }
    SUBCASE("zero block first") {
        DenseMatrix k(4, 4);
        k(2, 3) = 3.0;
        k(3, 2) = -3.0;
        const auto f = skew_schur(k);
        CHECK(f.block_values[0] == 0.0);
        CHECK(f.block_values[1] == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(schur_residual(k, f) <= 1e-14);
    }
    SUBCASE("blocks reordered ascending") {
        DenseMatrix k(4, 4);
        k(0, 1) = 2.0;
        k(1, 0) = -2.0;
        k(2, 3) = 1.0;
        k(3, 2) = -1.0;
        const auto f = skew_schur(k);
        CHECK(f.block_values[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(f.block_values[1] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(schur_residual(k, f) <= 1e-14);
        // Q is a block permutation.
        for (double v : f.q.data()) CHECK((std::abs(v) < 1e-15 || std::abs(std::abs(v) - 1.0) < 1e-15));
    }
    SUBCASE("errors") {
        CHECK(code_of([] { skew_schur(DenseMatrix{{0, 1}, {1, 0}}); }) == ErrorCode::NotSkewSymmetric);
        CHECK(code_of([] { skew_schur(DenseMatrix(3, 3)); }) == ErrorCode::OddDimensions);
    }
}

TEST_CASE("skew_schur on random skew matrices") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto rng = testing::rng_for(seed + 300);
        const std::size_t dim = 2 * (1 + seed % 7);
        const DenseMatrix m = testing::random_matrix(dim, dim, rng);
        const DenseMatrix k = m - transpose(m);
        const auto f = skew_schur(k);
        CAPTURE(seed);
        CHECK(frobenius_norm(multiply_transposed_left(f.q, f.q) - DenseMatrix::identity(dim)) <= 1e-12);
        CHECK(schur_residual(k, f) <= 1e-12 * (1.0 + frobenius_norm(k)));
        CHECK(std::is_sorted(f.block_values.begin(), f.block_values.end()));
    }
}

TEST_CASE("williamson examples") {
    SUBCASE("identity") {
        const auto w = williamson(DenseMatrix::identity(2));
        CHECK(w.d == std::vector<double>{1.0});
        CHECK(w.residual_diag <= 1e-10);
        CHECK(w.residual_sympl <= 1e-10);
        CHECK(frobenius_norm(multiply_transposed_left(w.s, w.s) - DenseMatrix::identity(2)) <= 1e-14);
    }
    SUBCASE("diag(2,1)") {
        const DenseMatrix a = diag({2, 1});
        const auto w = williamson(a);
        // d^2 = det A is the characteristic-polynomial oracle for n = 1.
        CHECK(std::abs(w.d[0] - testing::invariant_spectrum(a)[0]) <= 1e-15);
        CHECK(std::abs(w.d[0] - std::sqrt(2.0)) <= 1e-15);
        check_decomposition(a, w, 1e-12);
        // One valid diagonalizer is diag(2^{-1/4}, 2^{1/4}); it passes the same checks.
        const DenseMatrix s0 = diag({std::pow(2.0, -0.25), std::pow(2.0, 0.25)});
        CHECK(is_symplectic(s0).symplectic);
        CHECK(frobenius_norm(multiply_transposed_left(s0, a * s0) - std::sqrt(2.0) * DenseMatrix::identity(2)) <=
              1e-15);
    }
    SUBCASE("diag(0,3,0,3) has one zero symplectic eigenvalue") {
        const DenseMatrix a = diag({0, 3, 0, 3});
        const auto w = williamson(a);
        CHECK(w.m == 1);
        CHECK(w.d[0] == 0.0);
        CHECK(w.d[1] == doctest::Approx(3.0).epsilon(1e-14));
        check_decomposition(a, w, 1e-12);
    }
    SUBCASE("diag(I_n, 0_n) is rejected") {
        for (std::size_t n = 1; n <= 6; ++n) {
            std::vector<double> d(2 * n, 0.0);
            std::fill(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
            CHECK(code_of([&] { williamson(DenseMatrix::diagonal(d)); }) == ErrorCode::IsotropicKernel);
        }
    }
    SUBCASE("mixed kernel is rejected") {
        CHECK(code_of([] { williamson(diag({0, 0, 0, 1})); }) == ErrorCode::MixedDegenerateKernel);
    }
    SUBCASE("zero matrix") {
        const auto w = williamson(DenseMatrix(4, 4));
        CHECK(w.zero_matrix);
        CHECK(w.m == 2);
        CHECK(w.d == std::vector<double>{0.0, 0.0});
        CHECK(w.s == DenseMatrix::identity(4));
    }
    SUBCASE("input errors") {
        CHECK(code_of([] { williamson(DenseMatrix::identity(3)); }) == ErrorCode::OddDimensions);
        CHECK(code_of([] { williamson(diag({1, -1})); }) == ErrorCode::NotSPSD);
        CHECK(code_of([] { williamson(DenseMatrix{{1, 1}, {0, 1}}); }) == ErrorCode::NotSymmetric);
    }
}

TEST_CASE("symplectic_spectrum examples") {
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(symplectic_spectrum(DenseMatrix::identity(2 * n)) == std::vector<double>(n, 1.0));
    CHECK(symplectic_spectrum(diag({2, 1}))[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto d = symplectic_spectrum(diag({0, 3, 0, 3}));
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("spectrum agrees with the invariant oracle for n <= 2") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto rng = testing::rng_for(seed + 900);
        const std::size_t n = 1 + seed % 2;
        const DenseMatrix a = testing::random_spd(2 * n, rng);
        const auto d = symplectic_spectrum(a);
        const auto oracle = testing::invariant_spectrum(a);
        CAPTURE(seed);
        CHECK(testing::max_abs_diff(d, oracle) <= 1e-9 * (1.0 + frobenius_norm(a)));
    }
}

TEST_CASE("random spd decompositions and eigenpairs") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto rng = testing::rng_for(seed);
        const std::size_t n = 1 + seed % 6;
        const DenseMatrix a = testing::random_spd(2 * n, rng);
        const auto w = williamson(a);
        CAPTURE(seed);
        check_decomposition(a, w, 1e-9);
        CHECK(w.m == 0);
        CHECK(verify_eigenpairs(a, w.s, w.d, 1e-8).pass);
    }
}

TEST_CASE("spsd round trip through a known Williamson form") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t n = 2 + seed % 5;
        const auto c = testing::random_spsd_roundtrip(n, seed);
        const auto w = williamson(c.a);
        CAPTURE(seed);
        CHECK(w.m == c.m);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(std::abs(w.d[j] - c.spectrum[j]) <= 1e-8 * (1.0 + c.spectrum[j]));
        check_decomposition(c.a, w, 1e-9);
        // The constructed matrix has rank 2n - 2m.
        const auto e = sym_eig(c.a);
        CHECK(numeric_rank(e.eigenvalues, frobenius_norm(c.a), 1e-10) == 2 * n - 2 * c.m);
        // m agrees with the kernel report.
        CHECK(kernel_report(c.a).dim == 2 * w.m);
        CHECK(verify_eigenpairs(c.a, w.s, w.d, 1e-8).pass);
    }
}

TEST_CASE("scale covariance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rng = testing::rng_for(seed + 40);
        const DenseMatrix a = testing::random_spd(2 * (1 + seed % 5), rng);
        const auto d = symplectic_spectrum(a);
        for (double c : {0.25, 3.0, 100.0}) {
            const auto dc = symplectic_spectrum(c * a);
            for (std::size_t j = 0; j < d.size(); ++j)
                CHECK(std::abs(dc[j] - c * d[j]) <= 1e-10 * c * (1.0 + d.back()));
        }
    }
}

TEST_CASE("verify_eigenpairs") {
    const auto ok = verify_eigenpairs(DenseMatrix::identity(2), DenseMatrix::identity(2),
                                      std::vector<double>{1.0});
    CHECK(ok.pass);
    CHECK(ok.max_residual == 0.0);

    const DenseMatrix a = diag({3, 5, 2, 7});
    const auto w = williamson(a);
    CHECK(verify_eigenpairs(a, w.s, w.d).pass);
    auto perturbed = w.d;
    perturbed[1] += 0.1;
    CHECK_FALSE(verify_eigenpairs(a, w.s, perturbed).pass);

    CHECK(code_of([&] { verify_eigenpairs(a, w.s, std::vector<double>{1.0}); }) ==
          ErrorCode::ShapeMismatch);
}
