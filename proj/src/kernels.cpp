#include "ktf/kernels.hpp"

#include <atomic>
#include <bit>
#include <stdexcept>

namespace ktf::kernels {

namespace {

std::uint64_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i]));
    return s;
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

std::uint64_t andnot_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & ~b[i]));
    return s;
}

void and_store_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_store_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_store_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

const detail::KernelTable* pick_default() {
    if (const auto* t = detail::avx2_table()) return t;
    if (const auto* t = detail::neon_table()) return t;
    return &detail::scalar_table();
}

std::atomic<const detail::KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const detail::KernelTable* table() {
    const auto* t = g_table.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = pick_default();
        Backend b = Backend::scalar;
        if (t == detail::avx2_table()) b = Backend::avx2;
        else if (t == detail::neon_table()) b = Backend::neon;
        g_backend.store(b, std::memory_order_relaxed);
        g_table.store(t, std::memory_order_release);
    }
    return t;
}

} // namespace

namespace detail {

const KernelTable& scalar_table() {
    static const KernelTable t{popcount_scalar,  and_popcount_scalar, andnot_popcount_scalar,
                               and_store_scalar, or_store_scalar,     andnot_store_scalar};
    return t;
}

} // namespace detail

Backend active_backend() {
    table();
    return g_backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2: return detail::avx2_table() != nullptr;
        case Backend::neon: return detail::neon_table() != nullptr;
    }
    return false;
}

void set_backend(Backend b) {
    const detail::KernelTable* t = nullptr;
    switch (b) {
        case Backend::scalar: t = &detail::scalar_table(); break;
        case Backend::avx2: t = detail::avx2_table(); break;
        case Backend::neon: t = detail::neon_table(); break;
    }
    if (t == nullptr) throw std::invalid_argument("kernel backend not available: " + backend_name(b));
    g_backend.store(b, std::memory_order_relaxed);
    g_table.store(t, std::memory_order_release);
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) { return table()->popcount(a, n); }

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return table()->and_popcount(a, b, n);
}

std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return table()->andnot_popcount(a, b, n);
}

void and_store(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    table()->and_store(dst, a, b, n);
}

void or_store(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    table()->or_store(dst, a, b, n);
}

void andnot_store(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    table()->andnot_store(dst, a, b, n);
}

} // namespace ktf::kernels
