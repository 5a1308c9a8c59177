#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <variant>

#include "ktf/absorber.hpp"
#include "ktf/generators.hpp"
#include "ktf/rng.hpp"
#include "test_util.hpp"

using namespace ktf;
namespace tt = ktf::testing;

namespace {

AbsorbingStructure build_or_fail(const Graph& g, int t, int m, std::uint64_t seed) {
    PipelineConfig cfg;
    cfg.t = t;
    auto result = build_absorbing_structure(g, t, m, seed, cfg);
    if (std::holds_alternative<BuildFailure>(result)) {
        const auto& f = std::get<BuildFailure>(result);
        FAIL("build failed at ", f.stage, ": ", f.diagnostics);
    }
    return std::get<AbsorbingStructure>(std::move(result));
}

VertexSet random_zbar(const AbsorbingStructure& s, int n, std::mt19937_64& gen) {
    auto z1 = s.z1();
    VertexSet zbar(n);
    for (int i = 0; i < s.m; ++i) {
        const int j = i + bounded_int(gen, static_cast<int>(z1.size()) - i);
        std::swap(z1[static_cast<std::size_t>(i)], z1[static_cast<std::size_t>(j)]);
        zbar.set(z1[static_cast<std::size_t>(i)]);
    }
    return zbar;
}

} // namespace

TEST_CASE("build succeeds on a large complete graph") {
    const Graph g = tt::complete(620); // comfortably above 7m(t+40) for m=2, t=3
    const auto s = build_or_fail(g, 3, 2, 1);
    const auto report = verify_absorbing_structure(g, s);
    for (const auto& v : report.violations) MESSAGE(v);
    CHECK(report.pass);
    CHECK(s.K.size() == 6);
    CHECK(s.Z.size() == 8);
}

TEST_CASE("build succeeds on complete multipartite hosts") {
    const Graph g = complete_multipartite(3, 200);
    const auto s = build_or_fail(g, 3, 2, 1);
    CHECK(verify_absorbing_structure(g, s).pass);
}

TEST_CASE("build fails on a triangle-free host at the spider stage") {
    const Graph g = complete_multipartite(2, 3);
    PipelineConfig cfg;
    auto result = build_absorbing_structure(g, 3, 1, 1, cfg);
    REQUIRE(std::holds_alternative<BuildFailure>(result));
    // K_33 is too small to host any structure; either sizing or the spider
    // search reports the failure
    const auto& f = std::get<BuildFailure>(result);
    CHECK((f.stage == "spider" || f.stage == "template"));
}

TEST_CASE("triangle-free host large enough for sizing fails at the spider stage") {
    const Graph g = complete_multipartite(2, 100); // K_{100,100}, no triangles
    PipelineConfig cfg;
    auto result = build_absorbing_structure(g, 3, 1, 1, cfg);
    REQUIRE(std::holds_alternative<BuildFailure>(result));
    CHECK(std::get<BuildFailure>(result).stage == "spider");
}

TEST_CASE("vertex budget matches the accounting exactly") {
    const Graph g = tt::complete(620);
    const auto s = build_or_fail(g, 3, 2, 5);
    const long long expected =
        3LL * s.m * (s.t - 1) + s.tmpl.edge_count() * s.t + 4LL * s.m;
    CHECK(s.vertex_set(620).count() == expected);
    CHECK(s.vertex_set(620).count() <= 3 * s.m * (s.t - 1) + s.tmpl.edge_count() * s.t + 4 * s.m);
}

TEST_CASE("build is deterministic per seed") {
    const Graph g = complete_multipartite(3, 150);
    const auto a = build_or_fail(g, 3, 2, 9);
    const auto b = build_or_fail(g, 3, 2, 9);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("verification catches planted violations") {
    const Graph g = complete_multipartite(3, 150);
    const auto s = build_or_fail(g, 3, 2, 3);
    REQUIRE(verify_absorbing_structure(g, s).pass);

    SUBCASE("apex replaced by a non-neighbor of its base clique") {
        AbsorbingStructure bad = s;
        const auto edge = bad.A.begin()->first;
        const Clique& base = bad.K[static_cast<std::size_t>(edge.first)];
        // a vertex in the same part as a base member is not adjacent to it
        const int part = base.vertices[0] / 150;
        int replacement = -1;
        const VertexSet used = bad.vertex_set(g.vertex_count());
        for (int v = part * 150; v < (part + 1) * 150; ++v)
            if (!used.test(v)) {
                replacement = v;
                break;
            }
        REQUIRE(replacement >= 0);
        bad.A.begin()->second = replacement;
        const auto report = verify_absorbing_structure(g, bad);
        CHECK_FALSE(report.pass);
    }

    SUBCASE("overlapping base cliques") {
        AbsorbingStructure bad = s;
        bad.K[1] = bad.K[0];
        const auto report = verify_absorbing_structure(g, bad);
        CHECK_FALSE(report.pass);
    }
}

TEST_CASE("absorb covers exactly the structure minus Zbar") {
    const Graph g = complete_multipartite(3, 150);
    const auto s = build_or_fail(g, 3, 2, 7);
    const int n = g.vertex_count();
    const VertexSet all = s.vertex_set(n);
    std::mt19937_64 gen(21);
    for (int round = 0; round < 100; ++round) {
        const VertexSet zbar = random_zbar(s, n, gen);
        const auto cliques = absorb(s, zbar);
        VertexSet covered(n);
        for (const auto& c : cliques) {
            CHECK(c.order() == 3);
            CHECK(c.verify(g));
            for (int v : c.vertices) {
                CHECK_FALSE(covered.test(v));
                covered.set(v);
            }
        }
        CHECK(covered == all - zbar);
        CHECK(cliques.size() == static_cast<std::size_t>(s.tmpl.edge_count() + 3 * s.m));
    }
}

TEST_CASE("absorb validates Zbar") {
    const Graph g = complete_multipartite(3, 150);
    const auto s = build_or_fail(g, 3, 2, 13);
    const int n = g.vertex_count();
    VertexSet wrong_size(n);
    wrong_size.set(s.Z[0]);
    CHECK_THROWS_AS(absorb(s, wrong_size), std::invalid_argument);
    VertexSet outside(n);
    outside.set(s.Z[static_cast<std::size_t>(2 * s.m)]); // a Z2 vertex
    outside.set(s.Z[0]);
    CHECK_THROWS_AS(absorb(s, outside), std::invalid_argument);
}

TEST_CASE("flexible degree check on a complete host passes") {
    const Graph g = tt::complete(620);
    const auto s = build_or_fail(g, 3, 2, 15);
    const auto report = flexible_degree_check(g, s);
    CHECK(report.pass);
    CHECK(report.min_degree >= 2 * s.m - 1);
}

TEST_CASE("flexible degree check fails on a planted bad flexible set") {
    const Graph g = complete_multipartite(3, 150);
    auto s = build_or_fail(g, 3, 2, 17);
    // overwrite Z1 with vertices from a single part: vertices of that part
    // have no neighbors inside it
    for (int i = 0; i < 2 * s.m; ++i) s.Z[static_cast<std::size_t>(i)] = i;
    const auto report = flexible_degree_check(g, s);
    CHECK_FALSE(report.pass);
    CHECK(report.min_degree == 0);
}

TEST_CASE("empirical concentration on a complete host never dips") {
    const Graph g = tt::complete(620);
    const auto report = empirical_concentration(g, 3, 2, 5, 0.5, 31);
    CHECK(report.runs == 5);
    CHECK(report.build_failures == 0);
    CHECK(report.failure_rate == 0.0);
    CHECK(report.min_flexible_degree.size() == 5);
    for (int deg : report.min_flexible_degree) CHECK(deg >= 2 * 2 - 1);
    CHECK(report.bound == doctest::Approx(std::exp(-0.25 * report.x / 3.0)));
}

TEST_CASE("empirical concentration on a multipartite host") {
    const Graph g = complete_multipartite(3, 120);
    const auto report = empirical_concentration(g, 3, 2, 5, 0.9, 33);
    CHECK(report.build_failures == 0);
    CHECK(report.failure_rate >= 0.0);
    CHECK(report.failure_rate <= 1.0);
}

TEST_CASE("empirical concentration validates delta") {
    const Graph g = tt::complete(30);
    CHECK_THROWS_AS(empirical_concentration(g, 3, 1, 1, 2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(empirical_concentration(g, 3, 1, 0, 0.5, 0), std::invalid_argument);
}
