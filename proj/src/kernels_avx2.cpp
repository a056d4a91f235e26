// AVX2 variants of the mod-p row kernels. Reduction is Barrett with
// mu = floor(2^64 / p): for x < 2^63 the estimated quotient is off by at
// most one, so a single conditional subtract lands in [0, p).

#if defined(__x86_64__) || defined(_M_X64)

#include "spicy/kernels.hpp"

#include <immintrin.h>

namespace spicy::kern {

namespace {

// high 64 bits of x*m per lane, via four 32x32->64 partial products
__attribute__((target("avx2"))) inline __m256i mulhi_epu64(__m256i x, __m256i m) {
    const __m256i mask32 = _mm256_set1_epi64x(0xffffffffll);
    __m256i xh = _mm256_srli_epi64(x, 32);
    __m256i mh = _mm256_srli_epi64(m, 32);
    __m256i ll = _mm256_mul_epu32(x, m);
    __m256i lh = _mm256_mul_epu32(x, mh);
    __m256i hl = _mm256_mul_epu32(xh, m);
    __m256i hh = _mm256_mul_epu32(xh, mh);
    __m256i cross = _mm256_add_epi64(
        _mm256_add_epi64(_mm256_srli_epi64(ll, 32), _mm256_and_si256(lh, mask32)),
        _mm256_and_si256(hl, mask32));
    return _mm256_add_epi64(
        _mm256_add_epi64(hh, _mm256_srli_epi64(lh, 32)),
        _mm256_add_epi64(_mm256_srli_epi64(hl, 32), _mm256_srli_epi64(cross, 32)));
}

// low 64 bits of q*p per lane; p < 2^32 so two partials suffice
__attribute__((target("avx2"))) inline __m256i mullo_qp(__m256i q, __m256i p) {
    __m256i lo = _mm256_mul_epu32(q, p);
    __m256i hi = _mm256_slli_epi64(_mm256_mul_epu32(_mm256_srli_epi64(q, 32), p), 32);
    return _mm256_add_epi64(lo, hi);
}

// x mod p for x < 2^63; r and p fit in 32 bits, so the signed compare is safe
__attribute__((target("avx2"))) inline __m256i barrett(__m256i x, __m256i pv, __m256i mu) {
    __m256i q = mulhi_epu64(x, mu);
    __m256i r = _mm256_sub_epi64(x, mullo_qp(q, pv));
    __m256i lt = _mm256_cmpgt_epi64(pv, r);
    return _mm256_sub_epi64(r, _mm256_andnot_si256(lt, pv));
}

__attribute__((target("avx2"))) void axpy_avx2(std::uint64_t* dst, const std::uint64_t* src,
                                               std::uint64_t c, std::size_t n, std::uint64_t p) {
    const std::uint64_t mu = static_cast<std::uint64_t>((static_cast<__uint128_t>(1) << 64) / p);
    const __m256i cv = _mm256_set1_epi64x(static_cast<long long>(c));
    const __m256i pv = _mm256_set1_epi64x(static_cast<long long>(p));
    const __m256i muv = _mm256_set1_epi64x(static_cast<long long>(mu));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        // c, src lanes < 2^31: one 32x32 multiply is exact
        __m256i x = _mm256_add_epi64(d, _mm256_mul_epu32(cv, s));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), barrett(x, pv, muv));
    }
    for (; i < n; ++i)
        dst[i] = (dst[i] + c * src[i]) % p;
}

__attribute__((target("avx2"))) void scale_avx2(std::uint64_t* v, std::uint64_t c, std::size_t n,
                                                std::uint64_t p) {
    const std::uint64_t mu = static_cast<std::uint64_t>((static_cast<__uint128_t>(1) << 64) / p);
    const __m256i cv = _mm256_set1_epi64x(static_cast<long long>(c));
    const __m256i pv = _mm256_set1_epi64x(static_cast<long long>(p));
    const __m256i muv = _mm256_set1_epi64x(static_cast<long long>(mu));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
        __m256i x = _mm256_mul_epu32(cv, d);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + i), barrett(x, pv, muv));
    }
    for (; i < n; ++i)
        v[i] = (c * v[i]) % p;
}

}  // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{"avx2", &axpy_avx2, &scale_avx2};
    return k;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace spicy::kern

#endif
