#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ktf/generators.hpp"
#include "ktf/graph.hpp"
#include "test_util.hpp"

using namespace ktf;
namespace tt = ktf::testing;

TEST_CASE("load triangle") {
    const Graph g = load_edge_list("3 3\n0 1\n0 2\n1 2\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(0, 2));
}

TEST_CASE("load edgeless graph") {
    const Graph g = load_edge_list("2 0\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("load rejects malformed input") {
    CHECK_THROWS(load_edge_list("3 1\n0 3\n"));     // vertex out of range
    CHECK_THROWS(load_edge_list("3 1\n1 1\n"));     // self-loop
    CHECK_THROWS(load_edge_list("3 2\n0 1\n0 1\n"));// duplicate edge
    CHECK_THROWS(load_edge_list("3 1\n1 0\n"));     // endpoints out of order
    CHECK_THROWS(load_edge_list("x y\n"));          // malformed header
    CHECK_THROWS(load_edge_list("3 2\n0 1\n"));     // fewer edges than declared
    CHECK_THROWS(load_edge_list("3 1\n0 1\n0 2\n"));// more edges than declared
    CHECK_THROWS(load_edge_list(""));               // missing header
    CHECK_THROWS(load_edge_list("3 1\n0  1\n"));    // double space
}

TEST_CASE("comment lines are ignored") {
    const Graph g = load_edge_list("# triangle\n3 3\n0 1\n# middle\n0 2\n1 2\n");
    CHECK(g.edge_count() == 3);
}

TEST_CASE("write emits canonical order with trailing newline") {
    const Graph k3 = tt::complete(3);
    CHECK(write_edge_list(k3) == "3 3\n0 1\n0 2\n1 2\n");
    const Graph empty2 = Graph::from_edges(2, {});
    CHECK(write_edge_list(empty2) == "2 0\n");
}

TEST_CASE("petersen round-trips exactly") {
    const Graph g = tt::petersen();
    CHECK(g.edge_count() == 15);
    const Graph back = load_edge_list(write_edge_list(g));
    CHECK(back == g);
}

TEST_CASE("degree profile") {
    auto p = tt::complete(4).degree_profile();
    CHECK(p.is_regular);
    CHECK(*p.d == 3);

    auto q = tt::path(3).degree_profile();
    CHECK_FALSE(q.is_regular);
    CHECK_FALSE(q.d.has_value());

    auto r = tt::petersen().degree_profile();
    CHECK(r.is_regular);
    CHECK(*r.d == 3);
}

TEST_CASE("common neighborhood") {
    const Graph k4 = tt::complete(4);
    CHECK(k4.common_neighborhood(tt::make_set(4, {0, 1})) == tt::make_set(4, {2, 3}));

    const Graph c5 = tt::cycle(5);
    CHECK(c5.common_neighborhood(tt::make_set(5, {0, 1})).empty());

    CHECK_THROWS_AS(k4.common_neighborhood(VertexSet(4)), std::invalid_argument);
}

TEST_CASE("paley(13) codegree of an adjacent pair, against brute force") {
    const Graph g = paley(13);
    REQUIRE(g.has_edge(0, 1));
    const VertexSet cn = g.common_neighborhood(tt::make_set(13, {0, 1}));
    int brute = 0;
    for (int v = 2; v < 13; ++v)
        if (g.has_edge(0, v) && g.has_edge(1, v)) ++brute;
    CHECK(cn.count() == brute);
    CHECK(cn.count() == 2);
}

TEST_CASE("degree sum equals twice the edge count on random graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = tt::random_graph(40, 0.3, seed);
        long long total = 0;
        for (int v = 0; v < g.vertex_count(); ++v) total += g.degree(v);
        CHECK(total == 2 * g.edge_count());
    }
}

TEST_CASE("load of write is the identity on random graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = tt::random_graph(30, 0.2, seed ^ 99);
        CHECK(load_edge_list(write_edge_list(g)) == g);
    }
}

TEST_CASE("common neighborhood is contained in every member's neighborhood") {
    std::mt19937_64 gen(5);
    for (int round = 0; round < 20; ++round) {
        const Graph g = tt::random_graph(25, 0.4, static_cast<std::uint64_t>(round));
        VertexSet s = tt::random_subset(25, gen);
        const VertexSet cn = g.common_neighborhood(s);
        CHECK_FALSE(cn.intersects(s));
        s.for_each([&](int v) { CHECK(cn.is_subset_of(g.neighbors(v))); });
    }
}
