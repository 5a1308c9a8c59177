#include "ktf/kernels.hpp"

// NEON lane, aarch64 only.

#if defined(__aarch64__)

#include <bit>
#include <arm_neon.h>

namespace ktf::kernels {
namespace {

inline std::uint64_t popcount128(uint8x16_t v) {
    return vaddlvq_u8(vcntq_u8(v));
}

std::uint64_t popcount_neon(const std::uint64_t* a, std::size_t n) {
    std::uint64_t s = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        s += popcount128(vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i)));
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i]));
    return s;
}

std::uint64_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t s = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        s += popcount128(vandq_u8(va, vb));
    }
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

std::uint64_t andnot_popcount_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t s = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        s += popcount128(vbicq_u8(va, vb)); // a & ~b
    }
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & ~b[i]));
    return s;
}

void and_store_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        vst1q_u8(reinterpret_cast<std::uint8_t*>(dst + i), vandq_u8(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_store_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        vst1q_u8(reinterpret_cast<std::uint8_t*>(dst + i), vorrq_u8(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_store_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        vst1q_u8(reinterpret_cast<std::uint8_t*>(dst + i), vbicq_u8(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

} // namespace

namespace detail {

const KernelTable* neon_table() {
    static const KernelTable t{popcount_neon,  and_popcount_neon, andnot_popcount_neon,
                               and_store_neon, or_store_neon,     andnot_store_neon};
    return &t;
}

} // namespace detail

} // namespace ktf::kernels

#else // !__aarch64__

namespace ktf::kernels::detail {
const KernelTable* neon_table() { return nullptr; }
} // namespace ktf::kernels::detail

#endif // __aarch64__
