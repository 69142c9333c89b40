// AVX2 variants of the modular row kernels. This translation unit is compiled
// with -mavx2 and its functions are only reached after a runtime CPUID check.

#include "coreg/kernels.hpp"

#include <immintrin.h>

namespace coreg::kern {

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

namespace {

// High 32 bits of the 8 lanewise 32x32 products. AVX2 has no mulhi_epu32, so
// combine the even-lane and odd-lane 64-bit products.
inline __m256i mulhi_epu32(__m256i a, __m256i b) {
    __m256i even = _mm256_mul_epu32(a, b);
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
    return _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

// r <- r mod p given r in [0, 2p), via the unsigned-min trick: r-p wraps to a
// huge value exactly when r < p.
inline __m256i reduce_once(__m256i r, __m256i vp) {
    return _mm256_min_epu32(r, _mm256_sub_epi32(r, vp));
}

// y[i] = (y[i] + c*x[i]) mod p using Shoup multiplication: with
// c' = floor(c*2^32/p), q = floor(c'*x/2^32) satisfies c*x - q*p in [0, 2p).
void axpy_u32_avx2(uint32_t* y, const uint32_t* x, uint32_t c, size_t n, uint32_t p) {
    const uint32_t cshoup = static_cast<uint32_t>((static_cast<uint64_t>(c) << 32) / p);
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vcs = _mm256_set1_epi32(static_cast<int>(cshoup));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i yv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
        __m256i q = mulhi_epu32(xv, vcs);
        __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(xv, vc), _mm256_mullo_epi32(q, vp));
        r = reduce_once(r, vp);
        __m256i s = reduce_once(_mm256_add_epi32(yv, r), vp);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), s);
    }
    for (; i < n; ++i)
        y[i] = static_cast<uint32_t>((y[i] + static_cast<uint64_t>(c) * x[i]) % p);
}

void scal_u32_avx2(uint32_t* y, uint32_t c, size_t n, uint32_t p) {
    const uint32_t cshoup = static_cast<uint32_t>((static_cast<uint64_t>(c) << 32) / p);
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vcs = _mm256_set1_epi32(static_cast<int>(cshoup));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i yv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
        __m256i q = mulhi_epu32(yv, vcs);
        __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(yv, vc), _mm256_mullo_epi32(q, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce_once(r, vp));
    }
    for (; i < n; ++i)
        y[i] = static_cast<uint32_t>(static_cast<uint64_t>(c) * y[i] % p);
}

void xor_u64_avx2(uint64_t* y, const uint64_t* x, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i yv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm256_xor_si256(yv, xv));
    }
    for (; i < n; ++i) y[i] ^= x[i];
}

const Kernels kAvx2 = {axpy_u32_avx2, scal_u32_avx2, xor_u64_avx2, "avx2"};

}  // namespace

const Kernels& avx2() { return kAvx2; }

}  // namespace coreg::kern
