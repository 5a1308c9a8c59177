#include "ktf/template.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ktf/rng.hpp"

namespace ktf {

namespace {

// Hopcroft-Karp for X (left) against the right vertices enabled in `active`.
// Returns the matching size; match_x[x] = z or -1.
class BipartiteMatcher {
public:
    BipartiteMatcher(const Template& t, const std::vector<bool>& active)
        : t_(t), active_(active), match_x_(static_cast<std::size_t>(t.x_count()), -1),
          match_z_(static_cast<std::size_t>(t.z_count()), -1),
          dist_(static_cast<std::size_t>(t.x_count()), 0) {}

    int run() {
        int size = 0;
        while (bfs()) {
            for (int x = 0; x < t_.x_count(); ++x)
                if (match_x_[static_cast<std::size_t>(x)] < 0 && dfs(x)) ++size;
        }
        return size;
    }

    const std::vector<int>& match_x() const { return match_x_; }

private:
    static constexpr int kInf = 1 << 29;

    bool bfs() {
        std::queue<int> q;
        for (int x = 0; x < t_.x_count(); ++x) {
            if (match_x_[static_cast<std::size_t>(x)] < 0) {
                dist_[static_cast<std::size_t>(x)] = 0;
                q.push(x);
            } else {
                dist_[static_cast<std::size_t>(x)] = kInf;
            }
        }
        bool reachable = false;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int z : t_.z_neighbors_of_x(x)) {
                if (!active_[static_cast<std::size_t>(z)]) continue;
                int nx = match_z_[static_cast<std::size_t>(z)];
                if (nx < 0) {
                    reachable = true;
                } else if (dist_[static_cast<std::size_t>(nx)] == kInf) {
                    dist_[static_cast<std::size_t>(nx)] = dist_[static_cast<std::size_t>(x)] + 1;
                    q.push(nx);
                }
            }
        }
        return reachable;
    }

    bool dfs(int x) {
        for (int z : t_.z_neighbors_of_x(x)) {
            if (!active_[static_cast<std::size_t>(z)]) continue;
            int nx = match_z_[static_cast<std::size_t>(z)];
            if (nx < 0 || (dist_[static_cast<std::size_t>(nx)] == dist_[static_cast<std::size_t>(x)] + 1 && dfs(nx))) {
                match_x_[static_cast<std::size_t>(x)] = z;
                match_z_[static_cast<std::size_t>(z)] = x;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(x)] = kInf;
        return false;
    }

    const Template& t_;
    const std::vector<bool>& active_;
    std::vector<int> match_x_;
    std::vector<int> match_z_;
    std::vector<int> dist_;
};

bool matching_covers_x(const Template& t, const std::vector<int>& zbar, std::vector<int>* match_out) {
    std::vector<bool> active(static_cast<std::size_t>(t.z_count()), true);
    for (int z : zbar) active[static_cast<std::size_t>(z)] = false;
    BipartiteMatcher matcher(t, active);
    const int size = matcher.run();
    if (match_out != nullptr) *match_out = matcher.match_x();
    return size == t.x_count();
}

} // namespace

Template Template::from_edges(int m, int max_degree, const std::vector<std::pair<int, int>>& edges) {
    if (m < 1) throw std::invalid_argument("template: need m >= 1");
    if (max_degree < 3) throw std::invalid_argument("template: need max_degree >= 3");
    Template t;
    t.m_ = m;
    t.max_degree_ = max_degree;
    t.z_adj_.assign(static_cast<std::size_t>(4 * m), {});
    t.x_adj_.assign(static_cast<std::size_t>(3 * m), {});
    for (auto [x, z] : edges) {
        if (x < 0 || x >= 3 * m) throw std::invalid_argument("template: x index out of range");
        if (z < 0 || z >= 4 * m) throw std::invalid_argument("template: z index out of range");
        t.z_adj_[static_cast<std::size_t>(z)].push_back(x);
        t.x_adj_[static_cast<std::size_t>(x)].push_back(z);
        ++t.edge_count_;
    }
    for (auto& a : t.z_adj_) {
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::invalid_argument("template: duplicate edge");
        if (static_cast<int>(a.size()) > max_degree)
            throw std::invalid_argument("template: z degree exceeds max_degree");
    }
    for (auto& a : t.x_adj_) {
        std::sort(a.begin(), a.end());
        if (static_cast<int>(a.size()) > max_degree)
            throw std::invalid_argument("template: x degree exceeds max_degree");
    }
    t.verification_.mode = "none";
    return t;
}

Template Template::complete(int m) {
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < 3 * m; ++x)
        for (int z = 0; z < 4 * m; ++z) edges.emplace_back(x, z);
    return from_edges(m, std::max(4 * m, 3), edges);
}

bool Template::has_edge(int x, int z) const {
    const auto& a = z_adj_[static_cast<std::size_t>(z)];
    return std::binary_search(a.begin(), a.end(), x);
}

std::vector<std::pair<int, int>> Template::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int x = 0; x < x_count(); ++x)
        for (int z : x_adj_[static_cast<std::size_t>(x)]) out.emplace_back(x, z);
    return out;
}

Template::Verification verify_template(const Template& t, const VerifyMode& mode) {
    Template::Verification rec;
    const int m = t.m();
    const int z1 = t.z1_count();
    constexpr std::size_t kFailureCap = 16;

    auto check = [&](const std::vector<int>& zbar) {
        ++rec.checked;
        if (!matching_covers_x(t, zbar, nullptr)) {
            if (rec.failures.size() < kFailureCap) rec.failures.push_back(zbar);
            return false;
        }
        return true;
    };

    bool all_ok = true;
    if (mode.kind == VerifyMode::Kind::exhaustive) {
        rec.mode = "exhaustive";
        std::vector<int> zbar(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) zbar[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (!check(zbar)) all_ok = false;
            // next m-combination of [0, z1)
            int i = m - 1;
            while (i >= 0 && zbar[static_cast<std::size_t>(i)] == z1 - m + i) --i;
            if (i < 0) break;
            ++zbar[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                zbar[static_cast<std::size_t>(j)] = zbar[static_cast<std::size_t>(j - 1)] + 1;
        }
    } else {
        rec.mode = "sampled";
        std::mt19937_64 gen(split_seed(mode.seed, 5));
        std::vector<int> pool(static_cast<std::size_t>(z1));
        for (int k = 0; k < mode.sample_count; ++k) {
            for (int i = 0; i < z1; ++i) pool[static_cast<std::size_t>(i)] = i;
            std::vector<int> zbar;
            for (int i = 0; i < m; ++i) {
                const int j = i + bounded_int(gen, z1 - i);
                std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
                zbar.push_back(pool[static_cast<std::size_t>(i)]);
            }
            std::sort(zbar.begin(), zbar.end());
            if (!check(zbar)) all_ok = false;
        }
    }
    rec.pass = all_ok;
    return rec;
}

Template generate_template(int m, int max_degree, std::uint64_t seed, int retry_budget) {
    if (m < 1) throw std::invalid_argument("generate_template: need m >= 1");
    if (max_degree < 3) throw std::invalid_argument("generate_template: need max_degree >= 3");
    if (retry_budget < 1) throw std::invalid_argument("generate_template: need retry_budget >= 1");

    const int x_count = 3 * m;
    const int z_count = 4 * m;
    const int draws = std::max(1, std::min(max_degree / 2, x_count));

    std::mt19937_64 gen(split_seed(seed, 3));
    int sample_failures = 0;
    int verify_failures = 0;

    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        std::vector<int> x_degree(static_cast<std::size_t>(x_count), 0);
        std::vector<std::pair<int, int>> edges;
        bool ok = true;
        for (int z = 0; z < z_count && ok; ++z) {
            std::vector<int> eligible;
            for (int x = 0; x < x_count; ++x)
                if (x_degree[static_cast<std::size_t>(x)] < max_degree) eligible.push_back(x);
            if (static_cast<int>(eligible.size()) < draws) {
                ok = false;
                break;
            }
            for (int i = 0; i < draws; ++i) {
                const int j = i + bounded_int(gen, static_cast<int>(eligible.size()) - i);
                std::swap(eligible[static_cast<std::size_t>(i)], eligible[static_cast<std::size_t>(j)]);
                const int x = eligible[static_cast<std::size_t>(i)];
                edges.emplace_back(x, z);
                ++x_degree[static_cast<std::size_t>(x)];
            }
        }
        if (!ok) {
            ++sample_failures;
            continue;
        }

        Template t = Template::from_edges(m, max_degree, edges);
        const VerifyMode mode = m <= 10 ? VerifyMode::exhaustive()
                                        : VerifyMode::sampled(10000, split_seed(seed, 100 + attempt));
        auto rec = verify_template(t, mode);
        if (rec.pass) {
            t.set_verification(std::move(rec));
            return t;
        }
        ++verify_failures;
    }
    throw std::runtime_error("generate_template: retry budget exhausted (m=" + std::to_string(m) +
                             ", max_degree=" + std::to_string(max_degree) +
                             ", sampling failures=" + std::to_string(sample_failures) +
                             ", verification failures=" + std::to_string(verify_failures) + ")");
}

TemplateMatching resilient_matching(const Template& t, const std::vector<int>& zbar) {
    if (static_cast<int>(zbar.size()) != t.m())
        throw std::invalid_argument("resilient_matching: |Zbar| must equal m");
    std::vector<int> sorted = zbar;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("resilient_matching: Zbar has duplicates");
    for (int z : sorted)
        if (z < 0 || z >= t.z1_count())
            throw std::invalid_argument("resilient_matching: Zbar must lie inside Z1");

    std::vector<int> match_x;
    if (!matching_covers_x(t, sorted, &match_x))
        throw std::runtime_error("resilient_matching: template has no covering matching for this Zbar");
    TemplateMatching result;
    for (int x = 0; x < t.x_count(); ++x)
        result.pairs.emplace_back(x, match_x[static_cast<std::size_t>(x)]);
    return result;
}

std::string Template::to_json() const {
    nlohmann::ordered_json j;
    j["m"] = m_;
    j["max_degree"] = max_degree_;
    auto& e = j["edges"] = nlohmann::ordered_json::array();
    for (auto [x, z] : edges()) e.push_back({x, z});
    j["verification"] = {{"mode", verification_.mode},
                         {"checked", verification_.checked},
                         {"pass", verification_.pass}};
    return j.dump();
}

Template Template::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Template t = from_edges(j.at("m").get<int>(), j.at("max_degree").get<int>(), edges);
    if (j.contains("verification")) {
        Verification rec;
        rec.mode = j["verification"].value("mode", "none");
        rec.checked = j["verification"].value("checked", 0LL);
        rec.pass = j["verification"].value("pass", false);
        t.set_verification(std::move(rec));
    }
    return t;
}

} // namespace ktf
