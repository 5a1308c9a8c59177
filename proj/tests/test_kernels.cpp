#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>
#include <vector>

#include "ktf/kernels.hpp"

using namespace ktf::kernels;

namespace {

std::vector<std::uint64_t> random_words(std::size_t n, std::mt19937_64& gen) {
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = gen();
    return w;
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::scalar};
    if (backend_available(Backend::avx2)) out.push_back(Backend::avx2);
    if (backend_available(Backend::neon)) out.push_back(Backend::neon);
    return out;
}

struct BackendGuard {
    Backend saved = active_backend();
    ~BackendGuard() { set_backend(saved); }
};

} // namespace

TEST_CASE("scalar popcount matches std::popcount word by word") {
    BackendGuard guard;
    set_backend(Backend::scalar);
    std::mt19937_64 gen(1);
    const auto w = random_words(100, gen);
    std::uint64_t expected = 0;
    for (auto x : w) expected += static_cast<std::uint64_t>(std::popcount(x));
    CHECK(popcount(w.data(), w.size()) == expected);
}

TEST_CASE("all available lanes agree on random buffers") {
    BackendGuard guard;
    std::mt19937_64 gen(7);
    // sizes straddling the vector width, including ragged tails
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 31u, 100u, 257u}) {
        const auto a = random_words(n, gen);
        const auto b = random_words(n, gen);

        set_backend(Backend::scalar);
        const auto pc = popcount(a.data(), n);
        const auto apc = and_popcount(a.data(), b.data(), n);
        const auto anpc = andnot_popcount(a.data(), b.data(), n);
        std::vector<std::uint64_t> and_ref(n), or_ref(n), andnot_ref(n);
        and_store(and_ref.data(), a.data(), b.data(), n);
        or_store(or_ref.data(), a.data(), b.data(), n);
        andnot_store(andnot_ref.data(), a.data(), b.data(), n);

        for (Backend backend : available_backends()) {
            set_backend(backend);
            INFO("n=", n, " backend=", backend_name(backend));
            CHECK(popcount(a.data(), n) == pc);
            CHECK(and_popcount(a.data(), b.data(), n) == apc);
            CHECK(andnot_popcount(a.data(), b.data(), n) == anpc);
            std::vector<std::uint64_t> out(n);
            and_store(out.data(), a.data(), b.data(), n);
            CHECK(out == and_ref);
            or_store(out.data(), a.data(), b.data(), n);
            CHECK(out == or_ref);
            andnot_store(out.data(), a.data(), b.data(), n);
            CHECK(out == andnot_ref);
        }
    }
}

TEST_CASE("lanes agree on all-zero and all-one patterns") {
    BackendGuard guard;
    const std::size_t n = 33;
    std::vector<std::uint64_t> zero(n, 0), ones(n, ~std::uint64_t{0});
    for (Backend backend : available_backends()) {
        set_backend(backend);
        CHECK(popcount(zero.data(), n) == 0);
        CHECK(popcount(ones.data(), n) == 64 * n);
        CHECK(and_popcount(zero.data(), ones.data(), n) == 0);
        CHECK(andnot_popcount(ones.data(), zero.data(), n) == 64 * n);
    }
}

TEST_CASE("backend selection") {
    BackendGuard guard;
    CHECK(backend_available(Backend::scalar));
    set_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    if (!backend_available(Backend::neon))
        CHECK_THROWS_AS(set_backend(Backend::neon), std::invalid_argument);
}
