#include "spicy/kernels.hpp"

#include <cstdlib>
#include <string>

namespace spicy::kern {

namespace {

// p < 2^31 and all operands < p, so c*src + dst < 2^62 + 2^31: no overflow.
void axpy_scalar(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, std::size_t n,
                 std::uint64_t p) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = (dst[i] + c * src[i]) % p;
}

void scale_scalar(std::uint64_t* v, std::uint64_t c, std::size_t n, std::uint64_t p) {
    for (std::size_t i = 0; i < n; ++i)
        v[i] = (c * v[i]) % p;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", &axpy_scalar, &scale_scalar};
    return k;
}

const Kernels& active_kernels() {
    static const Kernels& picked = []() -> const Kernels& {
        const char* env = std::getenv("SPICY_KERNEL");
        std::string want = env ? env : "";
        if (want == "scalar")
            return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
        if (want == "avx2") {
            if (!avx2_supported())
                return scalar_kernels();
            return avx2_kernels();
        }
        if (want.empty() && avx2_supported())
            return avx2_kernels();
#endif
        return scalar_kernels();
    }();
    return picked;
}

std::vector<const Kernels*> runnable_kernels() {
    std::vector<const Kernels*> out{&scalar_kernels()};
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported())
        out.push_back(&avx2_kernels());
#endif
    return out;
}

}  // namespace spicy::kern
