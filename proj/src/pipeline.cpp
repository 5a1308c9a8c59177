#include "ktf/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "ktf/rng.hpp"
#include "ktf/sdr.hpp"

namespace ktf {

namespace {

constexpr int kCandidateCap = 200;
constexpr std::uint64_t kSdrBudget = 2'000'000;
constexpr std::uint64_t kFallbackBudget = 50'000'000;
constexpr int kFallbackMaxN = 60;

Tiling empty_tiling(int n) {
    Tiling t;
    t.covered = VertexSet(n);
    t.leftover = VertexSet::full(n);
    return t;
}

FailureReport make_failure(Stage stage, nlohmann::ordered_json diagnostics, Tiling partial) {
    FailureReport r;
    r.stage = stage;
    r.diagnostics = std::move(diagnostics);
    r.partial = std::move(partial);
    return r;
}

// One pass over stages 2-6 with a fixed stage seed.
std::variant<KtFactor, FailureReport> run_attempt(const Graph& g, const PipelineConfig& cfg, int m,
                                                  int stop_threshold, std::uint64_t seed) {
    const int n = g.vertex_count();
    const int t = cfg.t;

    auto build = build_absorbing_structure(g, t, m, seed, cfg);
    if (std::holds_alternative<BuildFailure>(build)) {
        const auto& f = std::get<BuildFailure>(build);
        return make_failure(Stage::absorber,
                            {{"builder_stage", f.stage}, {"index", f.index}, {"detail", f.diagnostics}},
                            empty_tiling(n));
    }
    const auto& structure = std::get<AbsorbingStructure>(build);
    auto structure_report = verify_absorbing_structure(g, structure);
    if (!structure_report.pass)
        throw std::logic_error("internal: built absorbing structure failed verification: " +
                               structure_report.violations.front());

    const VertexSet w = structure.vertex_set(n);

    // Stage 3: greedy tiling outside the absorber.
    Tiling tiling = greedy_tiling(g, w, t, stop_threshold);
    const VertexSet u = tiling.leftover;
    const int u_size = u.count();
    if ((t - 1) * u_size > m) {
        return make_failure(Stage::tiling,
                            {{"leftover", u_size},
                             {"stalled", tiling.stalled},
                             {"detail", "leftover too large for the flexible margin"}},
                            tiling);
    }
    if ((m + u_size) % t != 0)
        throw std::logic_error("internal: leftover size violates the divisibility accounting");

    // Stage 4: cover U from Z1 via disjoint representatives.
    const VertexSet z1 = structure.z1_set(n);
    CandidateFamily family = build_candidate_family(g, u, z1, t, kCandidateCap);
    SdrResult sdr = solve_sdr(family, kSdrBudget);
    if (sdr.status != SearchStatus::found) {
        int empty_lists = 0;
        for (const auto& list : family.candidates)
            if (list.empty()) ++empty_lists;
        return make_failure(Stage::sdr,
                            {{"outcome", sdr.status == SearchStatus::exhausted ? "exhausted" : "infeasible"},
                             {"uncovered", u_size},
                             {"empty_candidate_lists", empty_lists}},
                            tiling);
    }

    std::vector<Clique> cover_cliques;
    VertexSet consumed(n);
    for (std::size_t i = 0; i < family.vertices.size(); ++i) {
        Clique c = sdr.assignment[i];
        for (int v : c.vertices) consumed.set(v);
        c.vertices.push_back(family.vertices[i]);
        std::sort(c.vertices.begin(), c.vertices.end());
        cover_cliques.push_back(std::move(c));
    }

    // Stage 5: tile the unused flexible vertices down to exactly m.
    const VertexSet z1_rest = z1 - consumed;
    Tiling final_tiling = greedy_tiling(g, g.all_vertices() - z1_rest, t, m);
    if (final_tiling.leftover.count() != m) {
        return make_failure(Stage::final_tiling,
                            {{"flexible_left", final_tiling.leftover.count()},
                             {"target", m},
                             {"stalled", final_tiling.stalled}},
                            tiling);
    }

    // Stage 6: absorb the consumed flexible vertices.
    const VertexSet zbar = z1 - final_tiling.leftover;
    std::vector<Clique> absorbed;
    try {
        absorbed = absorb(structure, zbar);
    } catch (const std::exception& e) {
        return make_failure(Stage::absorption, {{"detail", e.what()}}, tiling);
    }

    KtFactor factor;
    factor.t = t;
    factor.n = n;
    factor.cliques = std::move(tiling.cliques);
    for (auto& c : cover_cliques) factor.cliques.push_back(std::move(c));
    for (auto& c : final_tiling.cliques) factor.cliques.push_back(std::move(c));
    for (auto& c : absorbed) factor.cliques.push_back(std::move(c));
    std::sort(factor.cliques.begin(), factor.cliques.end());

    auto report = verify_factor(g, factor);
    if (!report.pass)
        throw std::logic_error("internal: assembled factor failed self-verification: " +
                               report.violations.front());
    return factor;
}

} // namespace

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::divisibility: return "divisibility";
        case Stage::certification: return "certification";
        case Stage::absorber: return "absorber";
        case Stage::tiling: return "tiling";
        case Stage::sdr: return "sdr";
        case Stage::final_tiling: return "final_tiling";
        case Stage::absorption: return "absorption";
    }
    return "?";
}

PipelineResult kt_factor_detailed(const Graph& g, const PipelineConfig& cfg) {
    cfg.validate();
    PipelineResult result;
    const int n = g.vertex_count();
    const int t = cfg.t;

    if (n == 0 || n % t != 0) {
        result.outcome = make_failure(Stage::divisibility, {{"n", n}, {"t", t}}, empty_tiling(n));
        return result;
    }

    const auto profile = g.degree_profile();
    if (!profile.is_regular) {
        result.outcome =
            make_failure(Stage::certification, {{"detail", "graph is not regular"}}, empty_tiling(n));
        return result;
    }
    const int d = *profile.d;

    result.certificate = certify(g, t, cfg.c_value(), cfg.tolerance);
    if (cfg.enforce_spectral_hypothesis && !result.certificate->hypothesis_met) {
        result.outcome = make_failure(Stage::certification,
                                      {{"lambda", result.certificate->lambda},
                                       {"threshold", result.certificate->threshold},
                                       {"detail", "spectral hypothesis not met"}},
                                      empty_tiling(n));
        return result;
    }

    const int m = cfg.m_value(d);
    const int stop_threshold = cfg.stop_threshold_value(d);
    if (m >= 1 && (t - 1) * stop_threshold > m)
        throw std::invalid_argument(
            "config: (t-1)*stop_threshold exceeds the flexible margin |Z1| - m = m");

    result.dense_regime = n > 0 && static_cast<double>(d) / n > cfg.dense_cutoff_value();

    std::optional<FailureReport> last_failure;
    if (m < 1) {
        last_failure = make_failure(
            Stage::absorber,
            {{"detail", "flexibility m is zero at this scale; set m_override or epsilon"}, {"m", m}},
            empty_tiling(n));
    } else {
        for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
            result.attempts_used = attempt + 1;
            auto outcome = run_attempt(g, cfg, m, stop_threshold,
                                       split_seed(cfg.seed, 7000 + static_cast<std::uint64_t>(attempt)));
            if (std::holds_alternative<KtFactor>(outcome)) {
                result.outcome = std::move(outcome);
                return result;
            }
            last_failure = std::get<FailureReport>(std::move(outcome));
        }
        last_failure->diagnostics["attempts"] = cfg.attempts;
    }

    // Dense instances are the easy regime for exact search; run it as a last
    // resort on small graphs.
    if (result.dense_regime && n <= kFallbackMaxN) {
        auto exact = exact_factor(g, t, kFallbackBudget);
        if (exact.status == SearchStatus::found) {
            std::sort(exact.factor.cliques.begin(), exact.factor.cliques.end());
            auto report = verify_factor(g, exact.factor);
            if (!report.pass)
                throw std::logic_error("internal: exact fallback factor failed self-verification");
            result.used_exact_fallback = true;
            result.outcome = std::move(exact.factor);
            return result;
        }
        last_failure->diagnostics["exact_fallback"] =
            exact.status == SearchStatus::exhausted ? "exhausted" : "infeasible";
    }

    result.outcome = std::move(*last_failure);
    return result;
}

std::variant<KtFactor, FailureReport> kt_factor(const Graph& g, const PipelineConfig& cfg) {
    return kt_factor_detailed(g, cfg).outcome;
}

FactorReport verify_factor(const Graph& g, const KtFactor& factor) {
    FactorReport report;
    const int n = g.vertex_count();
    const int t = factor.t;
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (t < 1) {
        fail("invalid clique order t");
        return report;
    }
    if (factor.n != n) fail("factor vertex count differs from the graph");
    if (n % t != 0 || static_cast<long long>(factor.cliques.size()) != n / t)
        fail("expected " + std::to_string(n / std::max(t, 1)) + " cliques, got " +
             std::to_string(factor.cliques.size()));

    VertexSet covered(n);
    for (const auto& clique : factor.cliques) {
        if (clique.order() != t) {
            fail("clique of order " + std::to_string(clique.order()));
            continue;
        }
        bool in_range = true;
        for (int v : clique.vertices)
            if (v < 0 || v >= n) {
                fail("vertex " + std::to_string(v) + " out of range");
                in_range = false;
            }
        if (!in_range) continue;
        for (int v : clique.vertices) {
            if (covered.test(v))
                fail("vertex " + std::to_string(v) + " covered twice");
            covered.set(v);
        }
        for (std::size_t i = 0; i < clique.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < clique.vertices.size(); ++j)
                if (!g.has_edge(clique.vertices[i], clique.vertices[j]))
                    fail("pair (" + std::to_string(clique.vertices[i]) + "," +
                         std::to_string(clique.vertices[j]) + ") not adjacent");
    }
    if (covered.count() != n) fail("coverage incomplete: " + std::to_string(covered.count()) + "/" +
                                   std::to_string(n));
    report.pass = report.violations.empty();
    return report;
}

FractionalReport verify_fractional_factor(const Graph& g,
                                          const std::vector<std::pair<Clique, double>>& weights,
                                          int t, double tol) {
    if (tol < 0) throw std::invalid_argument("verify_fractional_factor: tol must be nonnegative");
    std::vector<double> load(static_cast<std::size_t>(g.vertex_count()), 0.0);
    for (const auto& [clique, weight] : weights) {
        if (clique.order() != t || !clique.verify(g))
            throw std::invalid_argument("verify_fractional_factor: weight key is not a t-clique of G");
        if (weight < -tol)
            throw std::invalid_argument("verify_fractional_factor: negative weight");
        for (int v : clique.vertices) load[static_cast<std::size_t>(v)] += weight;
    }
    FractionalReport report;
    for (double sum : load) report.max_violation = std::max(report.max_violation, std::abs(sum - 1.0));
    report.pass = report.max_violation <= tol;
    return report;
}

nlohmann::ordered_json factor_to_json(const KtFactor& factor) {
    nlohmann::ordered_json j;
    j["t"] = factor.t;
    j["n"] = factor.n;
    auto& cliques = j["cliques"] = nlohmann::ordered_json::array();
    for (const auto& c : factor.cliques) cliques.push_back(c.vertices);
    return j;
}

KtFactor factor_from_json(const nlohmann::json& j) {
    KtFactor f;
    f.t = j.at("t").get<int>();
    f.n = j.value("n", 0);
    for (const auto& c : j.at("cliques")) {
        Clique clique;
        for (const auto& v : c) clique.vertices.push_back(v.get<int>());
        f.cliques.push_back(std::move(clique));
    }
    if (f.n == 0) {
        int hi = 0;
        for (const auto& c : f.cliques)
            for (int v : c.vertices) hi = std::max(hi, v + 1);
        f.n = hi;
    }
    return f;
}

nlohmann::ordered_json failure_to_json(const FailureReport& report, int n) {
    nlohmann::ordered_json j;
    j["stage"] = stage_name(report.stage);
    j["diagnostics"] = report.diagnostics;
    const double coverage = n > 0 ? static_cast<double>(report.partial.covered.count()) / n : 0.0;
    j["coverage"] = coverage;
    auto& cliques = j["partial_cliques"] = nlohmann::ordered_json::array();
    for (const auto& c : report.partial.cliques) cliques.push_back(c.vertices);
    return j;
}

} // namespace ktf
