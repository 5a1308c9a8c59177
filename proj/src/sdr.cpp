#include "ktf/sdr.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ktf {

CandidateFamily build_candidate_family(const Graph& g, const VertexSet& u, const VertexSet& z1,
                                       int t, int cap) {
    if (cap < 1) throw std::invalid_argument("build_candidate_family: need cap >= 1");
    CandidateFamily family;
    family.cap = cap;
    for (int v = u.first(); v >= 0; v = u.next(v)) {
        VertexSet pool = g.neighbors(v) & z1;
        family.vertices.push_back(v);
        family.candidates.push_back(enumerate_cliques_in(g, pool, t - 1, cap));
    }
    return family;
}

namespace {

struct SdrSearch {
    const CandidateFamily& family;
    const std::vector<std::size_t>& order; // fewest candidates first
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::vector<int> chosen; // candidate index per order position, -1 = unset
    VertexSet used;

    bool assign(std::size_t pos) {
        if (pos == order.size()) return true;
        const auto& cands = family.candidates[order[pos]];
        for (std::size_t ci = 0; ci < cands.size(); ++ci) {
            if (++nodes > budget) {
                exhausted = true;
                return false;
            }
            const Clique& clique = cands[ci];
            bool clash = false;
            for (int v : clique.vertices)
                if (used.test(v)) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            for (int v : clique.vertices) used.set(v);
            chosen[pos] = static_cast<int>(ci);
            if (assign(pos + 1)) return true;
            for (int v : clique.vertices) used.reset(v);
            chosen[pos] = -1;
            if (exhausted) return false;
        }
        return false;
    }
};

int ground_universe(const CandidateFamily& family) {
    int hi = 0;
    for (const auto& list : family.candidates)
        for (const auto& clique : list)
            for (int v : clique.vertices) hi = std::max(hi, v + 1);
    return hi;
}

} // namespace

SdrResult solve_sdr(const CandidateFamily& family, std::uint64_t node_budget) {
    SdrResult result;
    const std::size_t k = family.size();
    if (k == 0) {
        result.status = SearchStatus::found;
        return result;
    }
    for (const auto& list : family.candidates) {
        if (list.empty()) {
            result.status = SearchStatus::infeasible;
            return result;
        }
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return family.candidates[a].size() < family.candidates[b].size();
    });

    const int universe = ground_universe(family);

    // Greedy warm start: first disjoint candidate per vertex in order.
    {
        VertexSet used(universe);
        std::vector<int> pick(k, -1);
        bool complete = true;
        for (std::size_t pos = 0; pos < k && complete; ++pos) {
            complete = false;
            const auto& cands = family.candidates[order[pos]];
            for (std::size_t ci = 0; ci < cands.size(); ++ci) {
                bool clash = false;
                for (int v : cands[ci].vertices)
                    if (used.test(v)) {
                        clash = true;
                        break;
                    }
                if (clash) continue;
                for (int v : cands[ci].vertices) used.set(v);
                pick[pos] = static_cast<int>(ci);
                complete = true;
                break;
            }
        }
        if (complete) {
            result.status = SearchStatus::found;
            result.assignment.resize(k);
            for (std::size_t pos = 0; pos < k; ++pos)
                result.assignment[order[pos]] =
                    family.candidates[order[pos]][static_cast<std::size_t>(pick[pos])];
            return result;
        }
    }

    SdrSearch search{family, order, node_budget};
    search.chosen.assign(k, -1);
    search.used = VertexSet(universe);
    const bool found = search.assign(0);
    result.nodes_visited = search.nodes;
    if (found) {
        result.status = SearchStatus::found;
        result.assignment.resize(k);
        for (std::size_t pos = 0; pos < k; ++pos)
            result.assignment[order[pos]] =
                family.candidates[order[pos]][static_cast<std::size_t>(search.chosen[pos])];
    } else {
        result.status = search.exhausted ? SearchStatus::exhausted : SearchStatus::infeasible;
    }
    return result;
}

namespace {

// Max size of a pairwise-disjoint subfamily of `sets`, early-exiting once
// `target` is reached. Branch and bound on include/exclude.
int max_disjoint_packing(const std::vector<Clique>& sets, std::size_t idx, VertexSet& used,
                         int current, int target) {
    if (current >= target) return current;
    if (idx == sets.size()) return current;
    int best = current;
    for (std::size_t i = idx; i < sets.size(); ++i) {
        // bound: even taking every remaining set cannot reach best+1
        if (current + static_cast<int>(sets.size() - i) <= best) break;
        bool clash = false;
        for (int v : sets[i].vertices)
            if (used.test(v)) {
                clash = true;
                break;
            }
        if (clash) continue;
        for (int v : sets[i].vertices) used.set(v);
        best = std::max(best, max_disjoint_packing(sets, i + 1, used, current + 1, target));
        for (int v : sets[i].vertices) used.reset(v);
        if (best >= target) return best;
    }
    return best;
}

} // namespace

AhReport ah_condition_check(const CandidateFamily& family, int k) {
    if (k < 1) throw std::invalid_argument("ah_condition_check: need k >= 1");
    const std::size_t entries = family.size();
    if (entries > 15)
        throw std::invalid_argument("ah_condition_check: family too large for exponential sweep");

    const int universe = ground_universe(family);
    AhReport report;
    report.pass = true;

    for (std::uint32_t mask = 1; mask < (1u << entries); ++mask) {
        std::vector<Clique> pool;
        std::vector<int> members;
        for (std::size_t i = 0; i < entries; ++i) {
            if (mask & (1u << i)) {
                members.push_back(family.vertices[i]);
                for (const auto& clique : family.candidates[i]) pool.push_back(clique);
            }
        }
        // duplicate candidate sets only slow the packing search down
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

        const long long required = static_cast<long long>(k) * (static_cast<long long>(members.size()) - 1);
        VertexSet used(universe);
        const int achieved =
            max_disjoint_packing(pool, 0, used, 0, static_cast<int>(required) + 1);
        if (achieved <= required) {
            report.pass = false;
            report.violating_subfamily = members;
            report.required = required;
            report.achieved = achieved;
            return report;
        }
    }
    return report;
}

} // namespace ktf
