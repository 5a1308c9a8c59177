#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ktf {

// Bipartite template with flexibility m: parts X (3m vertices) and
// Z = Z1 ∪ Z2 (2m + 2m vertices, Z1 flexible, indices 0..2m-1). A verified
// template keeps a perfect matching covering X after deleting any m-subset
// of Z1.
class Template {
public:
    struct Verification {
        std::string mode; // "none", "exhaustive", "sampled"
        long long checked = 0;
        bool pass = false;
        std::vector<std::vector<int>> failures; // offending Z1 subsets, capped
    };

    Template() = default;
    static Template from_edges(int m, int max_degree, const std::vector<std::pair<int, int>>& edges);
    // Complete bipartite template; trivially valid, used as a feasibility
    // certificate and in tests.
    static Template complete(int m);

    int m() const { return m_; }
    int x_count() const { return 3 * m_; }
    int z_count() const { return 4 * m_; }
    int z1_count() const { return 2 * m_; }
    int max_degree() const { return max_degree_; }
    long long edge_count() const { return edge_count_; }

    const std::vector<int>& x_neighbors_of_z(int z) const { return z_adj_[static_cast<std::size_t>(z)]; }
    const std::vector<int>& z_neighbors_of_x(int x) const { return x_adj_[static_cast<std::size_t>(x)]; }
    bool has_edge(int x, int z) const;
    // (x, z) pairs, ascending.
    std::vector<std::pair<int, int>> edges() const;

    const Verification& verification() const { return verification_; }
    void set_verification(Verification v) { verification_ = std::move(v); }

    std::string to_json() const;
    static Template from_json(const std::string& text);

private:
    int m_ = 0;
    int max_degree_ = 0;
    long long edge_count_ = 0;
    std::vector<std::vector<int>> z_adj_;
    std::vector<std::vector<int>> x_adj_;
    Verification verification_;
};

struct TemplateMatching {
    std::vector<std::pair<int, int>> pairs; // (x, z)
};

struct VerifyMode {
    enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
    int sample_count = 10000;
    std::uint64_t seed = 0;

    static VerifyMode exhaustive() { return {}; }
    static VerifyMode sampled(int k, std::uint64_t seed) {
        return {Kind::sampled, k, seed};
    }
};

// Checks that T minus each flexible subset Zbar (|Zbar| = m, Zbar ⊆ Z1) has
// a perfect matching covering X.
Template::Verification verify_template(const Template& t, const VerifyMode& mode);

// Random generate-and-verify: each z draws min(max_degree/2, 3m) distinct
// left neighbors among those under the degree cap. Exhaustive verification
// for m <= 10, sampled above. Throws when the retry budget is exhausted.
Template generate_template(int m, int max_degree, std::uint64_t seed, int retry_budget);

// Matching covering X and all of Z minus Zbar. Zbar holds Z-indices, must be
// an m-subset of Z1. Throws if no such matching exists.
TemplateMatching resilient_matching(const Template& t, const std::vector<int>& zbar);

} // namespace ktf
