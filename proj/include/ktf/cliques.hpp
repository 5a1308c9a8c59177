#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "ktf/graph.hpp"

namespace ktf {

struct Clique {
    std::vector<int> vertices; // sorted ascending

    int order() const { return static_cast<int>(vertices.size()); }
    bool verify(const Graph& g) const;
    auto operator<=>(const Clique&) const = default;
};

// (t-1)-clique base plus b pairwise-nonadjacent-irrelevant apexes, each
// adjacent to the whole base.
struct Spider {
    Clique base;
    VertexSet apexes;

    bool verify(const Graph& g) const;
};

struct Tiling {
    std::vector<Clique> cliques;
    VertexSet covered;
    VertexSet leftover;
    bool stalled = false;               // stopped by clique shortage, not stop_at
    long long threshold_violations = 0; // descent picks below the d|cand|/(2n) codegree mark
};

// Repeatedly takes the vertex of maximum degree in the candidate set's
// induced subgraph (ties to the lowest index) and restricts to its
// neighborhood. Returns a k-clique inside U, or nullopt when a step dead-ends.
std::optional<Clique> greedy_descent_clique(const Graph& g, const VertexSet& u, int k);

// Same, reporting how often the chosen vertex fell below the expected
// codegree mark d_avg*|cand|/(2n).
std::optional<Clique> greedy_descent_clique(const Graph& g, const VertexSet& u, int k,
                                            long long* threshold_violations);

// Greedy-descent base of order t-1 inside U, apexes = the b lowest-index
// vertices of the base's common neighborhood within U.
std::optional<Spider> find_spider(const Graph& g, const VertexSet& u, int t, int b);

// Greedy clique removal among non-forbidden vertices until the leftover has
// at most stop_at vertices or no clique is found.
Tiling greedy_tiling(const Graph& g, const VertexSet& forbidden, int t, int stop_at);

// Exact backtracking enumeration of k-cliques fully inside S, lexicographic
// order, truncated at limit.
std::vector<Clique> enumerate_cliques_in(const Graph& g, const VertexSet& s, int k, int limit);

struct KtFactor {
    int t = 0;
    int n = 0;
    std::vector<Clique> cliques;
};

enum class SearchStatus { found, infeasible, exhausted };

struct ExactFactorResult {
    SearchStatus status = SearchStatus::infeasible;
    KtFactor factor;
    std::uint64_t nodes_visited = 0;
};

// Exact search for a spanning family of vertex-disjoint t-cliques, always
// branching on the lowest-index uncovered vertex. Requires t | n.
ExactFactorResult exact_factor(const Graph& g, int t, std::uint64_t node_budget);

} // namespace ktf
