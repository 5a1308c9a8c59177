#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ktf/cliques.hpp"
#include "ktf/config.hpp"
#include "ktf/graph.hpp"
#include "ktf/template.hpp"

namespace ktf {

// Host-graph absorbing structure wired along a template: 3m base cliques K^i
// (one per x_i), an apex a_ij and a side clique S_ij per template edge, and
// 4m vertices Z with flexible prefix Z1. For each template edge x_i z_j,
// {a_ij} ∪ K^i, {a_ij} ∪ S_ij and {z_j} ∪ S_ij all span K_t.
struct AbsorbingStructure {
    Template tmpl;
    int t = 0;
    int m = 0;
    std::vector<Clique> K;                       // 3m cliques of order t-1
    std::map<std::pair<int, int>, int> A;        // template edge (i,j) -> apex
    std::map<std::pair<int, int>, Clique> S;     // template edge (i,j) -> clique of order t-1
    std::vector<int> Z;                          // 4m host vertices, Z1 = first 2m

    std::vector<int> z1() const { return {Z.begin(), Z.begin() + 2 * m}; }
    VertexSet z1_set(int n) const;
    VertexSet vertex_set(int n) const;           // all host vertices of the structure

    std::string to_json() const;
};

struct BuildFailure {
    std::string stage; // "template", "spider", "z_pool", "side_clique"
    int index = -1;    // spider i or step j where the build died
    std::string diagnostics;
};

using BuildResult = std::variant<AbsorbingStructure, BuildFailure>;

// Randomized sequential construction: vertex-disjoint spiders give K and the
// apexes; the Z vertices are drawn uniformly outside the per-step bad sets;
// side cliques come from apex/z common neighborhoods by greedy descent.
// Deterministic per seed.
BuildResult build_absorbing_structure(const Graph& g, int t, int m, std::uint64_t seed,
                                      const PipelineConfig& cfg);

struct StructureReport {
    bool pass = false;
    std::vector<std::string> violations;
};

// Definition recheck, independent of the builder: class disjointness,
// cardinalities, and the three K_t conditions per template edge.
StructureReport verify_absorbing_structure(const Graph& g, const AbsorbingStructure& s);

// For Zbar an m-subset of Z1 (host vertices): vertex-disjoint t-cliques
// covering exactly V(structure) minus Zbar.
std::vector<Clique> absorb(const AbsorbingStructure& s, const VertexSet& zbar);

struct FlexibleDegreeReport {
    int min_degree = 0;
    double threshold = 0.0;
    bool pass = false;
};

// min over v of deg(v, Z1) against d|Z1|/(2n).
FlexibleDegreeReport flexible_degree_check(const Graph& g, const AbsorbingStructure& s);

struct ConcentrationReport {
    int runs = 0;
    double delta = 0.0;
    double x = 0.0; // concentration target (1 - 140*t*eps) * (d/n) * |Z1|
    std::vector<int> min_flexible_degree; // one entry per successful run
    int build_failures = 0;
    double failure_rate = 0.0; // fraction of (run, vertex) pairs below (1-delta)*x
    double bound = 0.0;        // exp(-delta^2 * x / 3)
};

// Re-runs the randomized Z selection and tallies how often deg(v, Z1) falls
// below (1-delta)*x, for comparison against the martingale tail bound.
ConcentrationReport empirical_concentration(const Graph& g, int t, int m, int runs, double delta,
                                            std::uint64_t seed);

} // namespace ktf
