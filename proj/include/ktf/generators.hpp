#pragma once

#include <cstdint>

#include "ktf/graph.hpp"

namespace ktf {

// Paley graph on Z_q: x ~ y iff x - y is a nonzero quadratic residue.
// Requires q prime with q = 1 (mod 4); (q-1)/2-regular, lambda = (1+sqrt(q))/2.
Graph paley(int q);

// Complete multipartite graph with t parts of size s. d = (t-1)s, lambda = s.
Graph complete_multipartite(int t, int s);

// Simple d-regular graph via the pairing model (restart on collisions)
// followed by at least n*d double edge switches. Deterministic per seed.
Graph random_regular(int n, int d, std::uint64_t seed);

} // namespace ktf
