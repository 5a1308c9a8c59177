#include "ktf/cliques.hpp"

#include <algorithm>
#include <stdexcept>

namespace ktf {

bool Clique::verify(const Graph& g) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        int v = vertices[i];
        if (v < 0 || v >= g.vertex_count()) return false;
        if (i > 0 && vertices[i - 1] >= v) return false; // sorted, no duplicates
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!g.has_edge(v, vertices[j])) return false;
    }
    return true;
}

bool Spider::verify(const Graph& g) const {
    if (!base.verify(g)) return false;
    for (int v : base.vertices)
        if (apexes.test(v)) return false;
    bool ok = true;
    apexes.for_each([&](int a) {
        for (int v : base.vertices)
            if (!g.has_edge(a, v)) ok = false;
    });
    return ok;
}

std::optional<Clique> greedy_descent_clique(const Graph& g, const VertexSet& u, int k) {
    return greedy_descent_clique(g, u, k, nullptr);
}

std::optional<Clique> greedy_descent_clique(const Graph& g, const VertexSet& u, int k,
                                            long long* threshold_violations) {
    if (k < 1) throw std::invalid_argument("greedy_descent_clique: need k >= 1");
    const int n = g.vertex_count();
    const double mark_rate = n > 0 ? static_cast<double>(2 * g.edge_count()) / n / (2.0 * n) : 0.0;

    VertexSet cand = u;
    Clique clique;
    clique.vertices.reserve(static_cast<std::size_t>(k));
    for (int step = 1; step <= k; ++step) {
        int best = -1, best_deg = -1;
        for (int v = cand.first(); v >= 0; v = cand.next(v)) {
            const int deg = g.neighbors(v).and_count(cand);
            if (deg > best_deg) {
                best_deg = deg;
                best = v;
            }
        }
        if (best < 0) return std::nullopt;              // candidate set empty
        if (step < k && best_deg == 0) return std::nullopt; // dead end
        if (threshold_violations != nullptr && best_deg < mark_rate * cand.count())
            ++*threshold_violations;
        clique.vertices.push_back(best);
        cand &= g.neighbors(best);
    }
    std::sort(clique.vertices.begin(), clique.vertices.end());
    return clique;
}

std::optional<Spider> find_spider(const Graph& g, const VertexSet& u, int t, int b) {
    if (t < 3) throw std::invalid_argument("find_spider: need t >= 3");
    if (b < 1) throw std::invalid_argument("find_spider: need b >= 1");

    // Run the descent by hand so the final candidate set (the base's common
    // neighborhood within U) is available for the apexes.
    VertexSet cand = u;
    Clique base;
    for (int step = 1; step <= t - 1; ++step) {
        int best = -1, best_deg = -1;
        for (int v = cand.first(); v >= 0; v = cand.next(v)) {
            const int deg = g.neighbors(v).and_count(cand);
            if (deg > best_deg) {
                best_deg = deg;
                best = v;
            }
        }
        if (best < 0 || best_deg == 0) return std::nullopt;
        base.vertices.push_back(best);
        cand &= g.neighbors(best);
    }
    if (cand.count() < b) return std::nullopt;

    Spider spider;
    std::sort(base.vertices.begin(), base.vertices.end());
    spider.base = std::move(base);
    spider.apexes = VertexSet(g.vertex_count());
    int taken = 0;
    for (int v = cand.first(); v >= 0 && taken < b; v = cand.next(v), ++taken)
        spider.apexes.set(v);
    return spider;
}

Tiling greedy_tiling(const Graph& g, const VertexSet& forbidden, int t, int stop_at) {
    if (stop_at < 0) throw std::invalid_argument("greedy_tiling: need stop_at >= 0");
    Tiling tiling;
    tiling.covered = VertexSet(g.vertex_count());
    VertexSet avail = g.all_vertices() - forbidden;
    while (avail.count() > stop_at) {
        auto clique = greedy_descent_clique(g, avail, t, &tiling.threshold_violations);
        if (!clique) {
            tiling.stalled = true;
            break;
        }
        for (int v : clique->vertices) {
            tiling.covered.set(v);
            avail.reset(v);
        }
        tiling.cliques.push_back(std::move(*clique));
    }
    tiling.leftover = std::move(avail);
    return tiling;
}

namespace {

void enumerate_rec(const Graph& g, const VertexSet& allowed, int k, int limit, Clique& partial,
                   std::vector<Clique>& out) {
    if (static_cast<int>(out.size()) >= limit) return;
    if (partial.order() == k) {
        out.push_back(partial);
        return;
    }
    const int lo = partial.vertices.empty() ? -1 : partial.vertices.back();
    for (int v = allowed.next(lo); v >= 0; v = allowed.next(v)) {
        partial.vertices.push_back(v);
        if (partial.order() == k) {
            out.push_back(partial);
            partial.vertices.pop_back();
            if (static_cast<int>(out.size()) >= limit) return;
            continue;
        }
        VertexSet rest = allowed & g.neighbors(v);
        enumerate_rec(g, rest, k, limit, partial, out);
        partial.vertices.pop_back();
        if (static_cast<int>(out.size()) >= limit) return;
    }
}

} // namespace

std::vector<Clique> enumerate_cliques_in(const Graph& g, const VertexSet& s, int k, int limit) {
    if (k < 1) throw std::invalid_argument("enumerate_cliques_in: need k >= 1");
    if (limit < 1) throw std::invalid_argument("enumerate_cliques_in: need limit >= 1");
    std::vector<Clique> out;
    Clique partial;
    enumerate_rec(g, s, k, limit, partial, out);
    return out;
}

namespace {

struct FactorSearch {
    const Graph& g;
    int t;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::vector<Clique> chosen;

    bool extend(VertexSet& uncovered, Clique& partial, const VertexSet& cand);
    bool cover(VertexSet& uncovered);
};

// Builds a t-clique containing the current anchor vertex, extension
// candidates drawn from cand in ascending order, then recurses into cover().
bool FactorSearch::extend(VertexSet& uncovered, Clique& partial, const VertexSet& cand) {
    if (exhausted) return false;
    if (partial.order() == t) {
        chosen.push_back(partial);
        for (int v : partial.vertices) uncovered.reset(v);
        if (cover(uncovered)) return true;
        for (int v : partial.vertices) uncovered.set(v);
        chosen.pop_back();
        return false;
    }
    for (int v = cand.next(partial.vertices.back()); v >= 0; v = cand.next(v)) {
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        partial.vertices.push_back(v);
        VertexSet rest = cand & g.neighbors(v);
        const bool done = extend(uncovered, partial, rest);
        partial.vertices.pop_back();
        if (done) return true;
        if (exhausted) return false;
    }
    return false;
}

bool FactorSearch::cover(VertexSet& uncovered) {
    const int anchor = uncovered.first();
    if (anchor < 0) return true;
    if (++nodes > budget) {
        exhausted = true;
        return false;
    }
    Clique partial;
    partial.vertices.push_back(anchor);
    VertexSet cand = uncovered & g.neighbors(anchor);
    return extend(uncovered, partial, cand);
}

} // namespace

ExactFactorResult exact_factor(const Graph& g, int t, std::uint64_t node_budget) {
    if (t < 2) throw std::invalid_argument("exact_factor: need t >= 2");
    if (g.vertex_count() % t != 0)
        throw std::invalid_argument("exact_factor: t does not divide the vertex count");

    FactorSearch search{g, t, node_budget};
    VertexSet uncovered = g.all_vertices();
    ExactFactorResult result;
    const bool found = search.cover(uncovered);
    result.nodes_visited = search.nodes;
    if (found) {
        result.status = SearchStatus::found;
        result.factor.t = t;
        result.factor.n = g.vertex_count();
        result.factor.cliques = std::move(search.chosen);
    } else {
        result.status = search.exhausted ? SearchStatus::exhausted : SearchStatus::infeasible;
    }
    return result;
}

} // namespace ktf
