#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <variant>

#include "ktf/generators.hpp"
#include "ktf/pipeline.hpp"
#include "test_util.hpp"

using namespace ktf;
namespace tt = ktf::testing;

namespace {

PipelineConfig config(int t, int m, std::uint64_t seed) {
    PipelineConfig cfg;
    cfg.t = t;
    cfg.m_override = m;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("factor on complete multipartite s=20 (dense fallback regime)") {
    const Graph g = complete_multipartite(3, 20);
    const auto result = kt_factor_detailed(g, config(3, 2, 1));
    REQUIRE(result.success());
    const auto& factor = std::get<KtFactor>(result.outcome);
    CHECK(factor.cliques.size() == 20);
    CHECK(verify_factor(g, factor).pass);
}

TEST_CASE("factor on K_12 with t=4") {
    const Graph g = tt::complete(12);
    const auto result = kt_factor_detailed(g, config(4, 1, 1));
    REQUIRE(result.success());
    const auto& factor = std::get<KtFactor>(result.outcome);
    CHECK(factor.cliques.size() == 3);
    CHECK(verify_factor(g, factor).pass);
}

TEST_CASE("failure on K_33: triangle-free") {
    const Graph g = complete_multipartite(2, 3);
    const auto outcome = kt_factor(g, config(3, 1, 1));
    REQUIRE(std::holds_alternative<FailureReport>(outcome));
    const auto& failure = std::get<FailureReport>(outcome);
    CHECK(failure.stage == Stage::absorber);
    CHECK(failure.diagnostics.contains("exact_fallback")); // fallback ran and confirmed infeasible
}

TEST_CASE("failure on petersen: triangle-free, reported not faked") {
    const Graph g = tt::petersen();
    const auto outcome = kt_factor(g, config(3, 1, 1));
    REQUIRE(std::holds_alternative<FailureReport>(outcome));
}

TEST_CASE("divisibility failure") {
    const Graph g = tt::complete(10);
    const auto outcome = kt_factor(g, config(3, 1, 1));
    REQUIRE(std::holds_alternative<FailureReport>(outcome));
    CHECK(std::get<FailureReport>(outcome).stage == Stage::divisibility);
}

TEST_CASE("non-regular graphs fail at certification") {
    const Graph g = tt::path(6);
    const auto outcome = kt_factor(g, config(3, 1, 1));
    REQUIRE(std::holds_alternative<FailureReport>(outcome));
    CHECK(std::get<FailureReport>(outcome).stage == Stage::certification);
}

TEST_CASE("enforced spectral hypothesis rejects weak expansion") {
    const Graph g = complete_multipartite(3, 20);
    PipelineConfig cfg = config(3, 2, 1);
    cfg.enforce_spectral_hypothesis = true;
    const auto outcome = kt_factor(g, cfg);
    REQUIRE(std::holds_alternative<FailureReport>(outcome));
    CHECK(std::get<FailureReport>(outcome).stage == Stage::certification);
}

TEST_CASE("certificate is attached to the result") {
    const Graph g = complete_multipartite(3, 20);
    const auto result = kt_factor_detailed(g, config(3, 2, 1));
    REQUIRE(result.certificate.has_value());
    CHECK(result.certificate->n == 60);
    CHECK(result.certificate->d == 40);
    CHECK(result.certificate->lambda == doctest::Approx(20.0));
}

TEST_CASE("config validator rejects a stop threshold beyond the flexible margin") {
    const Graph g = complete_multipartite(3, 20);
    PipelineConfig cfg = config(3, 2, 1);
    cfg.stop_threshold = 5; // (t-1)*5 = 10 > m = 2
    CHECK_THROWS_AS(kt_factor(g, cfg), std::invalid_argument);
}

TEST_CASE("determinism: identical config gives identical output") {
    const Graph g = random_regular(60, 30, 4);
    const auto a = kt_factor_detailed(g, config(3, 2, 77));
    const auto b = kt_factor_detailed(g, config(3, 2, 77));
    REQUIRE(a.success() == b.success());
    if (a.success()) {
        CHECK(factor_to_json(std::get<KtFactor>(a.outcome)) ==
              factor_to_json(std::get<KtFactor>(b.outcome)));
    }
}

TEST_CASE("random regular hosts succeed on most seeds") {
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = random_regular(60, 30, seed);
        const auto result = kt_factor_detailed(g, config(3, 2, seed));
        if (result.success()) {
            CHECK(verify_factor(g, std::get<KtFactor>(result.outcome)).pass);
            ++successes;
        }
    }
    CHECK(successes >= 4);
}

TEST_CASE("verify factor accepts the transversal factor of a multipartite graph") {
    const Graph g = complete_multipartite(3, 2);
    KtFactor factor;
    factor.t = 3;
    factor.n = 6;
    factor.cliques.push_back({{0, 2, 4}});
    factor.cliques.push_back({{1, 3, 5}});
    CHECK(verify_factor(g, factor).pass);
}

TEST_CASE("verify factor rejects planted violations") {
    const Graph g = complete_multipartite(3, 2);
    KtFactor dup;
    dup.t = 3;
    dup.n = 6;
    dup.cliques.push_back({{0, 2, 4}});
    dup.cliques.push_back({{0, 3, 5}}); // vertex 0 duplicated, vertex 1 uncovered
    const auto dup_report = verify_factor(g, dup);
    CHECK_FALSE(dup_report.pass);

    KtFactor nonedge;
    nonedge.t = 3;
    nonedge.n = 6;
    nonedge.cliques.push_back({{0, 1, 2}}); // 0 and 1 share a part: not adjacent
    nonedge.cliques.push_back({{3, 4, 5}});
    const auto report = verify_factor(g, nonedge);
    CHECK_FALSE(report.pass);
    bool mentions_pair = false;
    for (const auto& v : report.violations)
        if (v.find("(0,1)") != std::string::npos) mentions_pair = true;
    CHECK(mentions_pair);
}

TEST_CASE("fractional verifier on the octahedron") {
    const Graph g = complete_multipartite(3, 2);
    const auto triangles = enumerate_cliques_in(g, g.all_vertices(), 3, 100);
    REQUIRE(triangles.size() == 8);

    std::vector<std::pair<Clique, double>> quarter;
    for (const auto& c : triangles) quarter.emplace_back(c, 0.25);
    const auto pass = verify_fractional_factor(g, quarter, 3, 1e-9);
    CHECK(pass.pass);
    CHECK(pass.max_violation == doctest::Approx(0.0));

    std::vector<std::pair<Clique, double>> third;
    for (const auto& c : triangles) third.emplace_back(c, 1.0 / 3.0);
    const auto fail = verify_fractional_factor(g, third, 3, 1e-9);
    CHECK_FALSE(fail.pass);
    CHECK(fail.max_violation == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("an integral factor is a fractional factor") {
    const Graph g = tt::complete(6);
    const auto exact = exact_factor(g, 3, 100000);
    REQUIRE(exact.status == SearchStatus::found);
    std::vector<std::pair<Clique, double>> weights;
    for (const auto& c : exact.factor.cliques) weights.emplace_back(c, 1.0);
    CHECK(verify_fractional_factor(g, weights, 3, 1e-12).pass);
}

TEST_CASE("fractional verifier rejects non-clique keys") {
    const Graph g = complete_multipartite(3, 2);
    std::vector<std::pair<Clique, double>> weights;
    weights.emplace_back(Clique{{0, 1, 2}}, 1.0); // not a triangle of the octahedron
    CHECK_THROWS_AS(verify_fractional_factor(g, weights, 3, 1e-9), std::invalid_argument);
}

TEST_CASE("factor JSON round trip") {
    const Graph g = tt::complete(6);
    const auto exact = exact_factor(g, 3, 100000);
    REQUIRE(exact.status == SearchStatus::found);
    const auto j = factor_to_json(exact.factor);
    const KtFactor back = factor_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.t == exact.factor.t);
    CHECK(back.n == exact.factor.n);
    CHECK(back.cliques == exact.factor.cliques);
}

TEST_CASE("failure JSON carries stage, diagnostics and coverage") {
    const Graph g = complete_multipartite(2, 3);
    const auto outcome = kt_factor(g, config(3, 1, 1));
    REQUIRE(std::holds_alternative<FailureReport>(outcome));
    const auto j = failure_to_json(std::get<FailureReport>(outcome), g.vertex_count());
    CHECK(j.contains("stage"));
    CHECK(j.contains("diagnostics"));
    CHECK(j.contains("coverage"));
    CHECK(j["coverage"].get<double>() >= 0.0);
}

TEST_CASE("coverage accounting on a successful run") {
    const Graph g = complete_multipartite(3, 20);
    const auto result = kt_factor_detailed(g, config(3, 2, 1));
    REQUIRE(result.success());
    const auto& factor = std::get<KtFactor>(result.outcome);
    CHECK(static_cast<int>(factor.cliques.size()) == g.vertex_count() / 3);
    VertexSet covered(g.vertex_count());
    for (const auto& c : factor.cliques)
        for (int v : c.vertices) covered.set(v);
    CHECK(covered.count() == g.vertex_count());
}
