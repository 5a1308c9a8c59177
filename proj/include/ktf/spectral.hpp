#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ktf/graph.hpp"

namespace ktf {

struct SpectralCertificate {
    int n = 0;
    int d = 0;
    double lambda = 0.0;
    double tolerance = 0.0;
    int t = 0;
    double c = 0.0;
    double threshold = 0.0; // c * d^t / n^(t-1)
    bool hypothesis_met = false;

    std::string to_json() const; // reals with 12 significant digits
};

struct EigenOptions {
    // Full dense solve up to this order, deflated power iteration above.
    int dense_threshold = 2000;
    long long max_iterations = 200000;
    std::uint64_t seed = 0x2545f4914f6cdd1dULL;
};

// Second largest adjacency eigenvalue in absolute value of a regular graph:
// max(|mu_2|, |mu_n|). Throws on non-regular input.
double second_eigenvalue(const Graph& g, double tolerance);
double second_eigenvalue(const Graph& g, double tolerance, const EigenOptions& opts);

// Full adjacency spectrum, ascending. Dense solve; intended for tests and
// moderate orders.
std::vector<double> adjacency_spectrum(const Graph& g);

SpectralCertificate certify(const Graph& g, int t, double c, double tolerance);

// Number of edges between A and B with edges inside the intersection counted
// twice: sum over v in A of |N(v) ∩ B|.
long long edges_between(const Graph& g, const VertexSet& a, const VertexSet& b);

// lambda*sqrt(|A||B|) - |e(A,B) - (d/n)|A||B||. Positive for the true
// spectral parameter. Throws on empty A or B.
double eml_slack(const Graph& g, const VertexSet& a, const VertexSet& b, double lambda);

// sqrt(d/2): universal lower bound on lambda when d <= n/2.
double lambda_floor(int d);

// n^{1-1/(2t-1)} / 2^{1/(2t-1)}: minimum degree forced by lambda <= d^t/n^{t-1}
// together with d <= n/2.
double degree_floor(long long n, int t);

// |{u in V : |N(u) ∩ U| < threshold}|.
long long low_degree_count(const Graph& g, const VertexSet& u, double threshold);

struct BijumbledEstimate {
    double p = 0.0;
    double lambda_lower_bound = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

// Sampled lower bound on the bijumbledness parameter: max over sampled (A,B)
// of |e(A,B) - p|A||B|| / sqrt(|A||B|). The first sample is always A = B = V.
BijumbledEstimate estimate_bijumbledness(const Graph& g, double p, int samples, std::uint64_t seed);

} // namespace ktf
