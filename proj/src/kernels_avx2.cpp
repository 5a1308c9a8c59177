#include "ktf/kernels.hpp"

// AVX2 lane. Guarded so the translation unit compiles to nothing elsewhere;
// the dispatcher additionally checks cpuid before installing the table.

#if defined(__x86_64__) || defined(_M_X64)
#define KTF_HAVE_AVX2_LANE 1
#else
#define KTF_HAVE_AVX2_LANE 0
#endif

#if KTF_HAVE_AVX2_LANE

#include <bit>
#include <immintrin.h>

namespace ktf::kernels {
namespace {

// Per-byte popcount via nibble lookup, horizontally summed with SAD.
inline __m256i popcount_bytes(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256()); // four u64 partial sums
}

inline std::uint64_t hsum(__m256i acc) {
    alignas(32) std::uint64_t tmp[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), acc);
    return tmp[0] + tmp[1] + tmp[2] + tmp[3];
}

std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, popcount_bytes(v));
    }
    std::uint64_t s = hsum(acc);
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i]));
    return s;
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcount_bytes(_mm256_and_si256(va, vb)));
    }
    std::uint64_t s = hsum(acc);
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

std::uint64_t andnot_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // andnot computes ~first & second
        acc = _mm256_add_epi64(acc, popcount_bytes(_mm256_andnot_si256(vb, va)));
    }
    std::uint64_t s = hsum(acc);
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & ~b[i]));
    return s;
}

void and_store_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_store_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_store_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(vb, va));
    }
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

} // namespace

namespace detail {

const KernelTable* avx2_table() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const KernelTable t{popcount_avx2,  and_popcount_avx2, andnot_popcount_avx2,
                               and_store_avx2, or_store_avx2,     andnot_store_avx2};
    return &t;
}

} // namespace detail

} // namespace ktf::kernels

#else // !KTF_HAVE_AVX2_LANE

namespace ktf::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
} // namespace ktf::kernels::detail

#endif
