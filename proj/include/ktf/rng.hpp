#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace ktf {

// splitmix64; used to derive independent stream seeds from a master seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Unbiased draw from [0, bound). Rejection sampling keeps results independent
// of the standard library's distribution implementation.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return r % bound;
}

inline int bounded_int(std::mt19937_64& gen, int bound) {
    return static_cast<int>(bounded(gen, static_cast<std::uint64_t>(bound)));
}

} // namespace ktf
