#include "sympl/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace sympl::kernels {

namespace {

constexpr KernelTable kScalar{Backend::Scalar, "scalar", &scalar::dot, &scalar::axpy,
                              &scalar::rot, &scalar::gemm};

#if defined(SYMPL_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2, "avx2", &avx2::dot, &avx2::axpy,
                            &avx2::rot, &avx2::gemm};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("SYMPL_KERNELS"); env && std::string_view(env) == "scalar")
        return &kScalar;
    if (const KernelTable* t = avx2_table()) return t;
    return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(SYMPL_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Backend backend) noexcept {
    const KernelTable* table = backend == Backend::Scalar ? &kScalar : avx2_table();
    if (!table) return false;
    current().store(table, std::memory_order_release);
    return true;
}

}  // namespace sympl::kernels
