#include "ktf/generators.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "ktf/rng.hpp"

namespace ktf {

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int p = 2; static_cast<long long>(p) * p <= q; ++p)
        if (q % p == 0) return false;
    return true;
}

} // namespace

Graph paley(int q) {
    if (!is_prime(q)) throw std::invalid_argument("paley: q = " + std::to_string(q) + " is not prime");
    if (q % 4 != 1) throw std::invalid_argument("paley: q = " + std::to_string(q) + " is not 1 mod 4");

    std::vector<bool> residue(static_cast<std::size_t>(q), false);
    for (long long x = 1; x < q; ++x) residue[static_cast<std::size_t>((x * x) % q)] = true;

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
            if (residue[static_cast<std::size_t>((v - u) % q)]) edges.emplace_back(u, v);
    return Graph::from_edges(q, edges);
}

Graph complete_multipartite(int t, int s) {
    if (t < 2) throw std::invalid_argument("complete_multipartite: need t >= 2");
    if (s < 1) throw std::invalid_argument("complete_multipartite: need s >= 1");
    const int n = t * s;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (u / s != v / s) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph random_regular(int n, int d, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("random_regular: need n > 0");
    if (d < 0 || d >= n) throw std::invalid_argument("random_regular: need 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("random_regular: n*d must be even");

    std::mt19937_64 gen(split_seed(seed, 0));
    const int restart_budget = 200;

    for (int attempt = 0; attempt < restart_budget; ++attempt) {
        // Pairing model: match stubs two at a time, redrawing the partner on
        // loop/duplicate collisions; a stuck tail forces a full restart.
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) stubs.push_back(v);

        std::vector<VertexSet> adj(static_cast<std::size_t>(n), VertexSet(n));
        std::vector<std::pair<int, int>> edge_list;
        bool failed = false;

        while (!stubs.empty()) {
            bool placed = false;
            for (int retry = 0; retry < 200 && !placed; ++retry) {
                std::size_t i = bounded(gen, stubs.size());
                std::size_t j = bounded(gen, stubs.size());
                if (i == j) continue;
                int u = stubs[i], v = stubs[j];
                if (u == v || adj[static_cast<std::size_t>(u)].test(v)) continue;
                adj[static_cast<std::size_t>(u)].set(v);
                adj[static_cast<std::size_t>(v)].set(u);
                edge_list.emplace_back(u, v);
                if (i < j) std::swap(i, j);
                stubs[i] = stubs.back();
                stubs.pop_back();
                stubs[j] = stubs.back();
                stubs.pop_back();
                placed = true;
            }
            if (!placed) {
                failed = true;
                break;
            }
        }
        if (failed) continue;

        // Double edge switches to wash out pairing bias.
        const long long switches = static_cast<long long>(n) * d;
        long long done = 0;
        long long budget = switches * 20;
        while (done < switches && budget-- > 0 && edge_list.size() >= 2) {
            std::size_t ei = bounded(gen, edge_list.size());
            std::size_t ej = bounded(gen, edge_list.size());
            if (ei == ej) continue;
            auto [a, b] = edge_list[ei];
            auto [c, e] = edge_list[ej];
            if (bounded(gen, 2) == 1) std::swap(c, e);
            // rewire (a,b),(c,e) -> (a,c),(b,e)
            if (a == c || a == e || b == c || b == e) continue;
            if (adj[static_cast<std::size_t>(a)].test(c) || adj[static_cast<std::size_t>(b)].test(e)) continue;
            adj[static_cast<std::size_t>(a)].reset(b);
            adj[static_cast<std::size_t>(b)].reset(a);
            adj[static_cast<std::size_t>(c)].reset(e);
            adj[static_cast<std::size_t>(e)].reset(c);
            adj[static_cast<std::size_t>(a)].set(c);
            adj[static_cast<std::size_t>(c)].set(a);
            adj[static_cast<std::size_t>(b)].set(e);
            adj[static_cast<std::size_t>(e)].set(b);
            edge_list[ei] = {a, c};
            edge_list[ej] = {b, e};
            ++done;
        }

        std::vector<std::pair<int, int>> edges;
        edges.reserve(edge_list.size());
        for (auto [u, v] : edge_list) edges.emplace_back(std::min(u, v), std::max(u, v));
        return Graph::from_edges(n, edges);
    }
    throw std::runtime_error("random_regular: restart budget exhausted for n=" + std::to_string(n) +
                             " d=" + std::to_string(d));
}

} // namespace ktf
