#pragma once

#include <cstdint>
#include <vector>

#include "ktf/cliques.hpp"
#include "ktf/graph.hpp"

namespace ktf {

// Per-vertex candidate lists for the leftover-cover step: for each uncovered
// v, (t-1)-cliques inside N(v) ∩ Z1.
struct CandidateFamily {
    std::vector<int> vertices;                  // the uncovered vertices, ascending
    std::vector<std::vector<Clique>> candidates; // aligned with vertices
    int cap = 0;

    std::size_t size() const { return vertices.size(); }
};

CandidateFamily build_candidate_family(const Graph& g, const VertexSet& u, const VertexSet& z1,
                                       int t, int cap);

struct SdrResult {
    SearchStatus status = SearchStatus::infeasible;
    std::vector<Clique> assignment; // aligned with family.vertices when found
    std::uint64_t nodes_visited = 0;
};

// Chooses one candidate clique per vertex, pairwise disjoint. Exact
// backtracking in fewest-candidates-first order with a greedy warm start.
SdrResult solve_sdr(const CandidateFamily& family, std::uint64_t node_budget);

struct AhReport {
    bool pass = false;
    // When pass is false: the first subfamily whose candidate union has no
    // matching of the required size.
    std::vector<int> violating_subfamily;
    long long required = 0; // matching size that had to be exceeded
    long long achieved = 0;
};

// The Hall-type sufficient condition: every subfamily G must admit a matching
// (pairwise-disjoint cliques) of size > k(|G|-1) in the union of its
// candidate lists. Exponential sweep; families over 15 entries are rejected.
AhReport ah_condition_check(const CandidateFamily& family, int k);

} // namespace ktf
