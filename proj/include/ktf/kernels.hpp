#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Word-level kernels behind every bitset operation in the library. Each
// kernel has a scalar reference implementation and, where the hardware
// supports it, a vectorized variant (AVX2 on x86-64, NEON on aarch64).
// The active variant is chosen once at startup from CPU capabilities and
// can be overridden for equivalence testing.

namespace ktf::kernels {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
bool backend_available(Backend b);
// Throws std::invalid_argument if the backend is not available on this CPU.
void set_backend(Backend b);
std::string backend_name(Backend b);

// All kernels operate on arrays of 64-bit words; n is the word count.
std::uint64_t popcount(const std::uint64_t* a, std::size_t n);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n); // |a & ~b|
void and_store(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
void or_store(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
void andnot_store(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

namespace detail {

struct KernelTable {
    std::uint64_t (*popcount)(const std::uint64_t*, std::size_t);
    std::uint64_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*, std::size_t);
    std::uint64_t (*andnot_popcount)(const std::uint64_t*, const std::uint64_t*, std::size_t);
    void (*and_store)(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
    void (*or_store)(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
    void (*andnot_store)(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table(); // nullptr when not compiled in or unsupported
const KernelTable* neon_table();

} // namespace detail

} // namespace ktf::kernels
