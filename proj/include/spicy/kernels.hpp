#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spicy::kern {

// Row kernels for dense elimination over F_p, p < 2^31. Inputs are canonical
// representatives in [0, p). All variants compute bit-identical results; the
// scalar one is the reference, the SIMD ones are equivalence-tested against it.
struct Kernels {
    const char* name;
    // dst[i] = (dst[i] + c * src[i]) mod p
    void (*axpy)(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, std::size_t n,
                 std::uint64_t p);
    // v[i] = (c * v[i]) mod p
    void (*scale)(std::uint64_t* v, std::uint64_t c, std::size_t n, std::uint64_t p);
};

const Kernels& scalar_kernels();

#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
bool avx2_supported();
#endif

/// Kernels picked at startup: best supported variant, or the one named by
/// SPICY_KERNEL (values: "scalar", "avx2").
const Kernels& active_kernels();

/// All variants runnable on this machine (for equivalence tests and the bench).
std::vector<const Kernels*> runnable_kernels();

}  // namespace spicy::kern
