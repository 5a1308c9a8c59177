#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "ktf/kernels.hpp"

namespace ktf {

// Fixed-universe bitset over vertex ids [0, n). All binary operations
// require both operands to share the same universe.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : n_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {
        assert(universe >= 0);
    }

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    int universe() const { return n_; }
    bool empty() const { return count() == 0; }

    int count() const {
        return static_cast<int>(kernels::popcount(words_.data(), words_.size()));
    }

    bool test(int v) const {
        assert(v >= 0 && v < n_);
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
    }

    void set(int v) {
        assert(v >= 0 && v < n_);
        words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void reset(int v) {
        assert(v >= 0 && v < n_);
        words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    int and_count(const VertexSet& o) const {
        assert(n_ == o.n_);
        return static_cast<int>(kernels::and_popcount(words_.data(), o.words_.data(), words_.size()));
    }

    int minus_count(const VertexSet& o) const {
        assert(n_ == o.n_);
        return static_cast<int>(kernels::andnot_popcount(words_.data(), o.words_.data(), words_.size()));
    }

    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        kernels::and_store(words_.data(), words_.data(), o.words_.data(), words_.size());
        return *this;
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        kernels::or_store(words_.data(), words_.data(), o.words_.data(), words_.size());
        return *this;
    }

    // Set difference: removes o's members.
    VertexSet& operator-=(const VertexSet& o) {
        assert(n_ == o.n_);
        kernels::andnot_store(words_.data(), words_.data(), o.words_.data(), words_.size());
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool intersects(const VertexSet& o) const { return and_count(o) > 0; }

    bool is_subset_of(const VertexSet& o) const { return minus_count(o) == 0; }

    bool operator==(const VertexSet& o) const = default;

    // First member, or -1 when empty.
    int first() const { return scan(0); }

    // Next member strictly after v, or -1.
    int next(int v) const { return scan(v + 1); }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w != 0) {
                int v = static_cast<int>((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
                f(v);
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    const std::uint64_t* data() const { return words_.data(); }
    std::size_t word_count() const { return words_.size(); }

private:
    void trim() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int scan(int from) const {
        if (from < 0) from = 0;
        if (from >= n_) return -1;
        std::size_t wi = static_cast<std::size_t>(from) >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w != 0) return static_cast<int>((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
            if (++wi == words_.size()) return -1;
            w = words_[wi];
        }
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace ktf
