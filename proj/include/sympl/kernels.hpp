#pragma once

// Data-parallel inner loops used by the dense routines. Each entry has a
// scalar reference implementation and, on x86-64, an AVX2/FMA variant chosen
// at runtime. Results of the two agree to rounding, not bit for bit.

#include <cstddef>
#include <string_view>

namespace sympl::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
    Backend backend;
    std::string_view name;

    double (*dot)(const double* x, const double* y, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // (x, y) <- (c*x - s*y, s*x + c*y)
    void (*rot)(double* x, double* y, std::size_t n, double c, double s);
    // c (m x n) = a (m x k) * b (k x n), all row-major and densely packed.
    void (*gemm)(std::size_t m, std::size_t k, std::size_t n,
                 const double* a, const double* b, double* c);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// Table used by the library. Defaults to the best available backend; the
/// environment variable SYMPL_KERNELS=scalar forces the reference path.
const KernelTable& active() noexcept;

/// Switch the active backend; returns false if it is unavailable. Not meant
/// to be called while other threads run library code.
bool select(Backend backend) noexcept;

class ScopedBackend {
public:
    explicit ScopedBackend(Backend backend) noexcept
        : previous_(active().backend), ok_(select(backend)) {}
    ~ScopedBackend() { select(previous_); }
    ScopedBackend(const ScopedBackend&) = delete;
    ScopedBackend& operator=(const ScopedBackend&) = delete;

    bool ok() const noexcept { return ok_; }

private:
    Backend previous_;
    bool ok_;
};

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rot(double* x, double* y, std::size_t n, double c, double s);
void gemm(std::size_t m, std::size_t k, std::size_t n,
          const double* a, const double* b, double* c);
}  // namespace scalar

#if defined(SYMPL_HAVE_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rot(double* x, double* y, std::size_t n, double c, double s);
void gemm(std::size_t m, std::size_t k, std::size_t n,
          const double* a, const double* b, double* c);
}  // namespace avx2
#endif

}  // namespace sympl::kernels
