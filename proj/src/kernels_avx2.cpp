#include "sympl/kernels.hpp"

#include <immintrin.h>

namespace sympl::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void rot(double* x, double* y, std::size_t n, double c, double s) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void gemm(std::size_t m, std::size_t k, std::size_t n,
          const double* a, const double* b, double* c) {
    std::size_t i = 0;
    // Two output rows per pass so each loaded row of b feeds two FMAs.
    for (; i + 2 <= m; i += 2) {
        double* c0 = c + i * n;
        double* c1 = c0 + n;
        const double* a0 = a + i * k;
        const double* a1 = a0 + k;
        std::size_t j = 0;
        for (; j + 8 <= n; j += 8) {
            __m256d s00 = _mm256_setzero_pd(), s01 = _mm256_setzero_pd();
            __m256d s10 = _mm256_setzero_pd(), s11 = _mm256_setzero_pd();
            for (std::size_t p = 0; p < k; ++p) {
                const double* bp = b + p * n + j;
                const __m256d b0 = _mm256_loadu_pd(bp);
                const __m256d b1 = _mm256_loadu_pd(bp + 4);
                const __m256d x0 = _mm256_set1_pd(a0[p]);
                const __m256d x1 = _mm256_set1_pd(a1[p]);
                s00 = _mm256_fmadd_pd(x0, b0, s00);
                s01 = _mm256_fmadd_pd(x0, b1, s01);
                s10 = _mm256_fmadd_pd(x1, b0, s10);
                s11 = _mm256_fmadd_pd(x1, b1, s11);
            }
            _mm256_storeu_pd(c0 + j, s00);
            _mm256_storeu_pd(c0 + j + 4, s01);
            _mm256_storeu_pd(c1 + j, s10);
            _mm256_storeu_pd(c1 + j + 4, s11);
        }
        for (; j + 4 <= n; j += 4) {
            __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
            for (std::size_t p = 0; p < k; ++p) {
                const __m256d bv = _mm256_loadu_pd(b + p * n + j);
                s0 = _mm256_fmadd_pd(_mm256_set1_pd(a0[p]), bv, s0);
                s1 = _mm256_fmadd_pd(_mm256_set1_pd(a1[p]), bv, s1);
            }
            _mm256_storeu_pd(c0 + j, s0);
            _mm256_storeu_pd(c1 + j, s1);
        }
        for (; j < n; ++j) {
            double s0 = 0.0, s1 = 0.0;
            for (std::size_t p = 0; p < k; ++p) {
                s0 += a0[p] * b[p * n + j];
                s1 += a1[p] * b[p * n + j];
            }
            c0[j] = s0;
            c1[j] = s1;
        }
    }
    for (; i < m; ++i) {
        double* ci = c + i * n;
        const double* ai = a + i * k;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            __m256d s = _mm256_setzero_pd();
            for (std::size_t p = 0; p < k; ++p)
                s = _mm256_fmadd_pd(_mm256_set1_pd(ai[p]), _mm256_loadu_pd(b + p * n + j), s);
            _mm256_storeu_pd(ci + j, s);
        }
        for (; j < n; ++j) {
            double s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += ai[p] * b[p * n + j];
            ci[j] = s;
        }
    }
}

}  // namespace sympl::kernels::avx2
