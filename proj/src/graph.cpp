#include "ktf/graph.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ktf {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
}

// Strict "<int> <int>" with a single space and no leading/trailing junk.
bool parse_int_pair(const std::string& line, long long& a, long long& b) {
    std::size_t i = 0;
    auto digits = [&](long long& out) {
        if (i >= line.size() || line[i] < '0' || line[i] > '9') return false;
        long long val = 0;
        while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
            val = val * 10 + (line[i] - '0');
            if (val > (1LL << 40)) return false;
            ++i;
        }
        out = val;
        return true;
    };
    if (!digits(a)) return false;
    if (i >= line.size() || line[i] != ' ') return false;
    ++i;
    if (!digits(b)) return false;
    return i == line.size();
}

} // namespace

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    Graph g;
    g.n_ = n;
    g.rows_.assign(static_cast<std::size_t>(n), VertexSet(n));
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("vertex index out of range: (" + std::to_string(u) + ", " +
                                        std::to_string(v) + ")");
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (g.rows_[static_cast<std::size_t>(u)].test(v))
            throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        g.rows_[static_cast<std::size_t>(u)].set(v);
        g.rows_[static_cast<std::size_t>(v)].set(u);
        ++g.edge_count_;
    }
    return g;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u) {
        for (int v = rows_[static_cast<std::size_t>(u)].next(u); v >= 0;
             v = rows_[static_cast<std::size_t>(u)].next(v))
            out.emplace_back(u, v);
    }
    return out;
}

Graph::DegreeProfile Graph::degree_profile() const {
    DegreeProfile p;
    if (n_ == 0) {
        p.is_regular = true;
        p.d = 0;
        return p;
    }
    int d0 = degree(0);
    for (int v = 1; v < n_; ++v) {
        if (degree(v) != d0) return p; // is_regular = false, d absent
    }
    p.is_regular = true;
    p.d = d0;
    return p;
}

VertexSet Graph::common_neighborhood(const VertexSet& s) const {
    if (s.empty()) throw std::invalid_argument("common_neighborhood: empty vertex set");
    VertexSet acc = VertexSet::full(n_);
    s.for_each([&](int v) { acc &= rows_[static_cast<std::size_t>(v)]; });
    acc -= s;
    return acc;
}

Graph load_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    long long n = 0, m = 0;
    std::vector<std::pair<int, int>> edges;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '#') continue;
        long long a = 0, b = 0;
        if (!parse_int_pair(line, a, b))
            parse_fail(line_no, have_header ? "malformed edge line '" + line + "'"
                                            : "malformed header '" + line + "'");
        if (!have_header) {
            n = a;
            m = b;
            have_header = true;
            continue;
        }
        if (static_cast<long long>(edges.size()) == m)
            parse_fail(line_no, "more edges than declared in header");
        if (a >= n || b >= n) parse_fail(line_no, "vertex index out of range");
        if (a == b) parse_fail(line_no, "self-loop");
        if (a > b) parse_fail(line_no, "edge endpoints not in increasing order");
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (!have_header) throw std::runtime_error("edge list: missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw std::runtime_error("edge list: header declares " + std::to_string(m) + " edges, got " +
                                 std::to_string(edges.size()));

    try {
        return Graph::from_edges(static_cast<int>(n), edges);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("edge list: ") + e.what());
    }
}

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    write_edge_list(g, out);
    return out.str();
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_edge_list(g, out);
}

} // namespace ktf
