#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ktf/cliques.hpp"
#include "ktf/generators.hpp"
#include "ktf/spectral.hpp"
#include "test_util.hpp"

using namespace ktf;
namespace tt = ktf::testing;

TEST_CASE("paley(5) is the 5-cycle") {
    const Graph g = paley(5);
    CHECK(g == tt::cycle(5)); // residues mod 5 are {1, 4}
}

TEST_CASE("paley(13) degree and spectrum") {
    const Graph g = paley(13);
    const auto prof = g.degree_profile();
    REQUIRE(prof.is_regular);
    CHECK(*prof.d == 6);
    CHECK(second_eigenvalue(g, 1e-9) ==
          doctest::Approx((1.0 + std::sqrt(13.0)) / 2.0).epsilon(1e-6));
}

TEST_CASE("paley input validation") {
    CHECK_THROWS_AS(paley(8), std::invalid_argument);  // not prime
    CHECK_THROWS_AS(paley(7), std::invalid_argument);  // 3 mod 4
    CHECK_THROWS_AS(paley(1), std::invalid_argument);
}

TEST_CASE("paley spectral identity across small q") {
    for (int q : {5, 13, 17, 29}) {
        const Graph g = paley(q);
        CHECK(g.degree_profile().d == (q - 1) / 2);
        CHECK(std::abs(second_eigenvalue(g, 1e-9) - (1.0 + std::sqrt(q)) / 2.0) <= 1e-6);
    }
}

TEST_CASE("complete multipartite small cases") {
    CHECK(complete_multipartite(3, 1) == tt::complete(3));

    const Graph octa = complete_multipartite(3, 2);
    CHECK(octa.vertex_count() == 6);
    CHECK(octa.edge_count() == 12);
    CHECK(enumerate_cliques_in(octa, octa.all_vertices(), 3, 100).size() == 8);
}

TEST_CASE("complete multipartite spectrum") {
    const Graph g = complete_multipartite(4, 3);
    CHECK(second_eigenvalue(g, 1e-9) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("multipartite validation") {
    CHECK_THROWS_AS(complete_multipartite(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(complete_multipartite(3, 0), std::invalid_argument);
}

TEST_CASE("random regular basic properties") {
    const Graph g = random_regular(10, 3, 1);
    CHECK(g.edge_count() == 15);
    const auto prof = g.degree_profile();
    REQUIRE(prof.is_regular);
    CHECK(*prof.d == 3);
}

TEST_CASE("random regular determinism") {
    const Graph a = random_regular(24, 5, 42);
    const Graph b = random_regular(24, 5, 42);
    CHECK(a == b);
    const Graph c = random_regular(24, 5, 43);
    CHECK(a != c);
}

TEST_CASE("random regular validation") {
    CHECK_THROWS_AS(random_regular(5, 3, 0), std::invalid_argument);  // odd n*d
    CHECK_THROWS_AS(random_regular(5, 5, 0), std::invalid_argument);  // d >= n
}

TEST_CASE("random regular has a healthy spectral gap at n=60 d=30") {
    const Graph g = random_regular(60, 30, 1);
    CHECK(second_eigenvalue(g, 1e-9) < 12.0);
}

TEST_CASE("generator outputs satisfy the graph invariants") {
    auto check_graph = [](const Graph& g, int expect_d) {
        long long degree_sum = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            CHECK_FALSE(g.has_edge(v, v));
            degree_sum += g.degree(v);
            for (int u = g.neighbors(v).first(); u >= 0; u = g.neighbors(v).next(u))
                CHECK(g.has_edge(u, v));
        }
        CHECK(degree_sum == 2 * g.edge_count());
        CHECK(g.degree_profile().d == expect_d);
    };
    check_graph(paley(17), 8);
    check_graph(complete_multipartite(3, 5), 10);
    check_graph(random_regular(20, 6, 7), 6);
    check_graph(random_regular(9, 0, 0), 0);
}
