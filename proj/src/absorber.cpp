#include "ktf/absorber.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ktf/rng.hpp"

namespace ktf {

namespace {

int host_degree(const Graph& g) {
    auto prof = g.degree_profile();
    if (prof.is_regular) return *prof.d;
    const int n = g.vertex_count();
    return n > 0 ? static_cast<int>(2 * g.edge_count() / n) : 0;
}

// Right-vertex draw count sized so the whole structure fits in roughly half
// the host graph: 3m(t-1) + 4m fixed vertices plus t per template edge.
// Capped at the sparse-template default max_degree/2 = 20.
int fit_template_draws(int n, int t, int m, int degree_cap) {
    const long long fixed = 3LL * m * (t - 1) + 4LL * m;
    const long long budget = n / 2;
    if (budget <= fixed) return 0;
    const long long per_z = 4LL * m * t;
    const long long fit = (budget - fixed) / per_z;
    return static_cast<int>(std::min<long long>({fit, 3LL * m, degree_cap / 2}));
}

struct Builder {
    const Graph& g;
    int t;
    int m;
    const PipelineConfig& cfg;
    std::mt19937_64 gen;

    int n = 0;
    VertexSet used;

    Builder(const Graph& graph, int t_, int m_, std::uint64_t seed, const PipelineConfig& cfg_)
        : g(graph), t(t_), m(m_), cfg(cfg_), gen(split_seed(seed, 2)), n(graph.vertex_count()),
          used(graph.vertex_count()) {}

    BuildResult run(std::uint64_t seed);
};

BuildResult Builder::run(std::uint64_t seed) {
    AbsorbingStructure s;
    s.t = t;
    s.m = m;

    const int draws = fit_template_draws(n, t, m, 40);
    if (draws < 1)
        return BuildFailure{"template", -1,
                            "host graph too small for a flexibility-" + std::to_string(m) +
                                " structure (n=" + std::to_string(n) + ")"};
    const int tmpl_degree = std::max(2 * draws, 3);
    try {
        s.tmpl = generate_template(m, tmpl_degree, split_seed(seed, 1), 200);
    } catch (const std::exception& e) {
        return BuildFailure{"template", -1, e.what()};
    }

    // Spiders: base clique K^i plus one apex per template edge at x_i.
    for (int i = 0; i < s.tmpl.x_count(); ++i) {
        const auto& zs = s.tmpl.z_neighbors_of_x(i);
        const int needed = static_cast<int>(zs.size());
        const VertexSet avail = g.all_vertices() - used;
        Clique base;
        std::vector<int> apexes;
        if (needed == 0) {
            auto found = greedy_descent_clique(g, avail, t - 1);
            if (!found)
                return BuildFailure{"spider", i, "no (t-1)-clique among " +
                                                     std::to_string(avail.count()) + " free vertices"};
            base = std::move(*found);
        } else {
            auto spider = find_spider(g, avail, t, needed);
            if (!spider)
                return BuildFailure{"spider", i, "no spider with " + std::to_string(needed) +
                                                     " apexes among " + std::to_string(avail.count()) +
                                                     " free vertices"};
            base = std::move(spider->base);
            apexes = spider->apexes.to_vector();
        }
        for (int v : base.vertices) used.set(v);
        for (std::size_t k = 0; k < zs.size(); ++k) {
            const int apex = apexes[k];
            s.A[{i, zs[k]}] = apex;
            used.set(apex);
        }
        s.K.push_back(std::move(base));
    }

    // Sequential Z selection with per-step bad sets.
    const double floor_codegree = cfg.codegree_floor_value(n, host_degree(g));
    for (int j = 0; j < s.tmpl.z_count(); ++j) {
        const auto& xs = s.tmpl.x_neighbors_of_z(j);

        std::vector<VertexSet> pools; // N(a_ij) minus used, per template neighbor
        pools.reserve(xs.size());
        for (int i : xs) pools.push_back(g.neighbors(s.A.at({i, j})) - used);

        std::vector<int> candidates;
        const VertexSet free = g.all_vertices() - used;
        for (int v = free.first(); v >= 0; v = free.next(v)) {
            bool bad = false;
            for (const auto& pool : pools) {
                if (pool.and_count(g.neighbors(v)) < floor_codegree) {
                    bad = true;
                    break;
                }
            }
            if (!bad) candidates.push_back(v);
        }

        bool placed = false;
        for (int attempt = 0; attempt < 2 && !placed; ++attempt) {
            if (candidates.empty())
                return BuildFailure{"z_pool", j,
                                    "no eligible vertex for z_" + std::to_string(j) + " (free=" +
                                        std::to_string(free.count()) +
                                        ", codegree floor=" + std::to_string(floor_codegree) + ")"};
            const std::size_t pick = bounded(gen, candidates.size());
            const int zj = candidates[pick];

            VertexSet round_used = used;
            round_used.set(zj);
            std::vector<std::pair<int, Clique>> side;
            bool ok = true;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                VertexSet pool = pools[k] - round_used;
                pool &= g.neighbors(zj);
                auto clique = greedy_descent_clique(g, pool, t - 1);
                if (!clique) {
                    ok = false;
                    break;
                }
                for (int v : clique->vertices) round_used.set(v);
                side.emplace_back(xs[k], std::move(*clique));
            }
            if (!ok) {
                // one local retry with a fresh z_j
                candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
                if (attempt == 1)
                    return BuildFailure{"side_clique", j,
                                        "no disjoint (t-1)-clique for a template edge at z_" +
                                            std::to_string(j)};
                continue;
            }
            used = std::move(round_used);
            for (auto& [i, clique] : side) s.S[{i, j}] = std::move(clique);
            s.Z.push_back(zj);
            placed = true;
        }
        if (!placed)
            return BuildFailure{"side_clique", j, "z_" + std::to_string(j) + " placement failed"};
    }

    return s;
}

} // namespace

VertexSet AbsorbingStructure::z1_set(int n) const {
    VertexSet s(n);
    for (int idx = 0; idx < 2 * m && idx < static_cast<int>(Z.size()); ++idx) s.set(Z[static_cast<std::size_t>(idx)]);
    return s;
}

VertexSet AbsorbingStructure::vertex_set(int n) const {
    VertexSet s(n);
    for (const auto& k : K)
        for (int v : k.vertices) s.set(v);
    for (const auto& [edge, apex] : A) s.set(apex);
    for (const auto& [edge, clique] : S)
        for (int v : clique.vertices) s.set(v);
    for (int v : Z) s.set(v);
    return s;
}

BuildResult build_absorbing_structure(const Graph& g, int t, int m, std::uint64_t seed,
                                      const PipelineConfig& cfg) {
    if (t < 3) throw std::invalid_argument("build_absorbing_structure: need t >= 3");
    if (m < 1) throw std::invalid_argument("build_absorbing_structure: need m >= 1");
    Builder builder(g, t, m, seed, cfg);
    return builder.run(seed);
}

StructureReport verify_absorbing_structure(const Graph& g, const AbsorbingStructure& s) {
    StructureReport report;
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
    const int n = g.vertex_count();
    const int m = s.m;

    if (s.tmpl.m() != m) fail("template flexibility differs from structure m");
    if (static_cast<int>(s.K.size()) != 3 * m)
        fail("expected 3m = " + std::to_string(3 * m) + " base cliques, got " +
             std::to_string(s.K.size()));
    if (static_cast<int>(s.Z.size()) != 4 * m)
        fail("expected 4m = " + std::to_string(4 * m) + " Z vertices, got " + std::to_string(s.Z.size()));

    const auto edges = s.tmpl.edges();
    if (s.A.size() != edges.size()) fail("apex map does not cover the template edge set");
    if (s.S.size() != edges.size()) fail("side-clique map does not cover the template edge set");
    for (auto [x, z] : edges) {
        if (!s.A.count({x, z})) fail("missing apex for template edge (" + std::to_string(x) + "," + std::to_string(z) + ")");
        if (!s.S.count({x, z})) fail("missing side clique for template edge (" + std::to_string(x) + "," + std::to_string(z) + ")");
    }

    // Class disjointness, including overlaps inside a class.
    VertexSet k_set(n), s_set(n), a_set(n), z_set(n);
    auto add_checked = [&](VertexSet& dst, int v, const char* what) {
        if (v < 0 || v >= n) {
            fail(std::string(what) + ": vertex out of range");
            return;
        }
        if (k_set.test(v) || s_set.test(v) || a_set.test(v) || z_set.test(v))
            fail(std::string(what) + ": vertex " + std::to_string(v) + " reused");
        dst.set(v);
    };
    for (const auto& k : s.K) {
        if (k.order() != s.t - 1) fail("base clique of wrong order");
        if (!k.verify(g)) fail("base clique fails adjacency check");
        for (int v : k.vertices) add_checked(k_set, v, "base clique");
    }
    for (const auto& [edge, clique] : s.S) {
        if (clique.order() != s.t - 1) fail("side clique of wrong order");
        if (!clique.verify(g)) fail("side clique fails adjacency check");
        for (int v : clique.vertices) add_checked(s_set, v, "side clique");
    }
    for (const auto& [edge, apex] : s.A) add_checked(a_set, apex, "apex");
    for (int v : s.Z) add_checked(z_set, v, "Z vertex");

    // The three K_t conditions per template edge.
    for (auto [i, j] : edges) {
        auto apex_it = s.A.find({i, j});
        auto side_it = s.S.find({i, j});
        if (apex_it == s.A.end() || side_it == s.S.end()) continue;
        const int a = apex_it->second;
        const Clique& side = side_it->second;
        if (i < static_cast<int>(s.K.size()))
            for (int v : s.K[static_cast<std::size_t>(i)].vertices)
                if (!g.has_edge(a, v))
                    fail("apex a(" + std::to_string(i) + "," + std::to_string(j) +
                         ") not adjacent to base clique K^" + std::to_string(i));
        for (int v : side.vertices) {
            if (!g.has_edge(a, v))
                fail("apex a(" + std::to_string(i) + "," + std::to_string(j) +
                     ") not adjacent to its side clique");
            if (j < static_cast<int>(s.Z.size()) && !g.has_edge(s.Z[static_cast<std::size_t>(j)], v))
                fail("z_" + std::to_string(j) + " not adjacent to side clique S(" + std::to_string(i) +
                     "," + std::to_string(j) + ")");
        }
    }

    report.pass = report.violations.empty();
    return report;
}

std::vector<Clique> absorb(const AbsorbingStructure& s, const VertexSet& zbar) {
    const int m = s.m;
    if (zbar.count() != m) throw std::invalid_argument("absorb: |Zbar| must equal m");
    std::vector<int> zbar_indices;
    for (int idx = 0; idx < 2 * m; ++idx)
        if (zbar.test(s.Z[static_cast<std::size_t>(idx)])) zbar_indices.push_back(idx);
    if (static_cast<int>(zbar_indices.size()) != m)
        throw std::invalid_argument("absorb: Zbar must be a subset of the flexible vertices Z1");

    const TemplateMatching matching = resilient_matching(s.tmpl, zbar_indices);
    std::vector<std::pair<int, int>> unmatched = s.tmpl.edges();
    std::vector<Clique> out;

    auto make = [](Clique base, int extra) {
        base.vertices.push_back(extra);
        std::sort(base.vertices.begin(), base.vertices.end());
        return base;
    };

    for (auto [i, j] : matching.pairs) {
        out.push_back(make(s.K[static_cast<std::size_t>(i)], s.A.at({i, j})));
        out.push_back(make(s.S.at({i, j}), s.Z[static_cast<std::size_t>(j)]));
        auto it = std::find(unmatched.begin(), unmatched.end(), std::make_pair(i, j));
        if (it == unmatched.end()) throw std::logic_error("absorb: matching edge outside template");
        unmatched.erase(it);
    }
    for (auto [i, j] : unmatched) out.push_back(make(s.S.at({i, j}), s.A.at({i, j})));
    return out;
}

FlexibleDegreeReport flexible_degree_check(const Graph& g, const AbsorbingStructure& s) {
    auto prof = g.degree_profile();
    if (!prof.is_regular) throw std::invalid_argument("flexible_degree_check: graph is not regular");
    const int d = *prof.d;
    const int n = g.vertex_count();
    const VertexSet z1 = s.z1_set(n);

    FlexibleDegreeReport report;
    report.threshold = static_cast<double>(d) * z1.count() / (2.0 * n);
    report.min_degree = n;
    for (int v = 0; v < n; ++v)
        report.min_degree = std::min(report.min_degree, g.neighbors(v).and_count(z1));
    report.pass = report.min_degree >= report.threshold;
    return report;
}

ConcentrationReport empirical_concentration(const Graph& g, int t, int m, int runs, double delta,
                                            std::uint64_t seed) {
    if (runs < 1) throw std::invalid_argument("empirical_concentration: need runs >= 1");
    if (!(delta > 0.0 && delta < 1.5))
        throw std::invalid_argument("empirical_concentration: delta must be in (0, 3/2)");
    auto prof = g.degree_profile();
    if (!prof.is_regular) throw std::invalid_argument("empirical_concentration: graph is not regular");
    const int d = *prof.d;
    if (d == 0) throw std::invalid_argument("empirical_concentration: degree must be positive");
    const int n = g.vertex_count();

    ConcentrationReport report;
    report.runs = runs;
    report.delta = delta;
    const double eps = static_cast<double>(m) / d; // m = eps * d
    report.x = (1.0 - 140.0 * t * eps) * (static_cast<double>(d) / n) * (2.0 * m);
    report.bound = std::exp(-delta * delta * report.x / 3.0);

    PipelineConfig cfg;
    cfg.t = t;
    long long below = 0;
    long long observed = 0;
    const double cut = (1.0 - delta) * report.x;
    for (int r = 0; r < runs; ++r) {
        auto result = build_absorbing_structure(g, t, m, split_seed(seed, 1000 + static_cast<std::uint64_t>(r)), cfg);
        if (std::holds_alternative<BuildFailure>(result)) {
            ++report.build_failures;
            continue;
        }
        const auto& s = std::get<AbsorbingStructure>(result);
        const VertexSet z1 = s.z1_set(n);
        int run_min = n;
        for (int v = 0; v < n; ++v) {
            const int deg = g.neighbors(v).and_count(z1);
            run_min = std::min(run_min, deg);
            if (deg < cut) ++below;
            ++observed;
        }
        report.min_flexible_degree.push_back(run_min);
    }
    report.failure_rate = observed > 0 ? static_cast<double>(below) / static_cast<double>(observed) : 0.0;
    return report;
}

std::string AbsorbingStructure::to_json() const {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["m"] = m;
    j["template_ref"] = nlohmann::ordered_json::parse(tmpl.to_json());
    auto& kj = j["K"] = nlohmann::ordered_json::array();
    for (const auto& k : K) kj.push_back(k.vertices);
    auto& aj = j["A"] = nlohmann::ordered_json::object();
    for (const auto& [edge, apex] : A)
        aj[std::to_string(edge.first) + "," + std::to_string(edge.second)] = apex;
    auto& sj = j["S"] = nlohmann::ordered_json::object();
    for (const auto& [edge, clique] : S)
        sj[std::to_string(edge.first) + "," + std::to_string(edge.second)] = clique.vertices;
    j["Z"] = Z;
    return j.dump();
}

} // namespace ktf
