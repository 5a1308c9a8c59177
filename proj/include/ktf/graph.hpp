#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktf/bitset.hpp"

namespace ktf {

// Immutable simple undirected graph with dense bitset adjacency rows.
class Graph {
public:
    struct DegreeProfile {
        bool is_regular = false;
        std::optional<int> d;
    };

    // Edges must satisfy 0 <= u < v < n; throws on self-loops, out-of-range
    // endpoints or duplicates.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    long long edge_count() const { return edge_count_; }

    const VertexSet& neighbors(int v) const { return rows_[static_cast<std::size_t>(v)]; }
    bool has_edge(int u, int v) const { return rows_[static_cast<std::size_t>(u)].test(v); }
    int degree(int v) const { return rows_[static_cast<std::size_t>(v)].count(); }
    int codegree(int u, int v) const {
        return rows_[static_cast<std::size_t>(u)].and_count(rows_[static_cast<std::size_t>(v)]);
    }

    VertexSet all_vertices() const { return VertexSet::full(n_); }

    // Edges in canonical order (u < v, lexicographic).
    std::vector<std::pair<int, int>> edges() const;

    DegreeProfile degree_profile() const;

    // Intersection of the neighborhoods of S's members, excluding S itself.
    // Throws std::invalid_argument on empty S.
    VertexSet common_neighborhood(const VertexSet& s) const;

    bool operator==(const Graph& o) const = default;

private:
    Graph() = default;

    int n_ = 0;
    long long edge_count_ = 0;
    std::vector<VertexSet> rows_;
};

// Edge-list text format: header "<n> <m>", then m lines "<u> <v>" with
// 0 <= u < v < n, LF endings, '#' comment lines ignored.
Graph load_edge_list(std::istream& in);
Graph load_edge_list(const std::string& text);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
std::string write_edge_list(const Graph& g);
void write_edge_list_file(const Graph& g, const std::string& path);

} // namespace ktf
