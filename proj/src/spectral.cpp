#include "ktf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "ktf/rng.hpp"

namespace ktf {

namespace {

int require_regular(const Graph& g, const char* who) {
    auto prof = g.degree_profile();
    if (!prof.is_regular) throw std::invalid_argument(std::string(who) + ": graph is not regular");
    return *prof.d;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v)
        g.neighbors(v).for_each([&](int u) { a(v, u) = 1.0; });
    return a;
}

// y = A*x via adjacency rows.
void matvec(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        double s = 0.0;
        g.neighbors(v).for_each([&](int u) { s += x[static_cast<std::size_t>(u)]; });
        y[static_cast<std::size_t>(v)] = s;
    }
}

// Spectral radius of B = A - (d/n)*J restricted to 1^perp, via power
// iteration on B^2. For a d-regular graph the all-ones vector lies in
// ker(B), so the radius equals max(|mu_2|, |mu_n|).
double lambda_iterative(const Graph& g, int d, double tolerance, const EigenOptions& opts) {
    const int n = g.vertex_count();
    std::mt19937_64 gen(opts.seed);
    std::vector<double> x(static_cast<std::size_t>(n)), y(x), z(x);
    for (auto& xi : x) xi = static_cast<double>(bounded(gen, 2000001)) / 1000000.0 - 1.0;

    const double dn = static_cast<double>(d) / n;
    auto apply_b = [&](const std::vector<double>& in, std::vector<double>& out) {
        matvec(g, in, out);
        double sum = 0.0;
        for (double v : in) sum += v;
        const double shift = dn * sum;
        for (auto& v : out) v -= shift;
    };

    double prev = -1.0;
    for (long long it = 0; it < opts.max_iterations; ++it) {
        apply_b(x, y);
        apply_b(y, z);
        double nx = 0.0, rayleigh = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            nx += x[i] * x[i];
            rayleigh += x[i] * z[i];
        }
        if (nx == 0.0) return 0.0;
        const double est = std::sqrt(std::max(0.0, rayleigh / nx));
        double nz = 0.0;
        for (double v : z) nz += v * v;
        nz = std::sqrt(nz);
        if (nz == 0.0) return 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = z[i] / nz;
        if (it > 4 && std::abs(est - prev) < tolerance / 4) return est;
        prev = est;
    }
    throw std::runtime_error("second_eigenvalue: power iteration did not converge");
}

} // namespace

std::vector<double> adjacency_spectrum(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("adjacency_spectrum: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double second_eigenvalue(const Graph& g, double tolerance) {
    return second_eigenvalue(g, tolerance, EigenOptions{});
}

double second_eigenvalue(const Graph& g, double tolerance, const EigenOptions& opts) {
    if (tolerance <= 0) throw std::invalid_argument("second_eigenvalue: tolerance must be positive");
    const int d = require_regular(g, "second_eigenvalue");
    const int n = g.vertex_count();
    if (n <= 1) return 0.0;
    if (n <= opts.dense_threshold) {
        auto spectrum = adjacency_spectrum(g); // ascending
        return std::max(std::abs(spectrum[static_cast<std::size_t>(n) - 2]), std::abs(spectrum[0]));
    }
    return lambda_iterative(g, d, tolerance, opts);
}

SpectralCertificate certify(const Graph& g, int t, double c, double tolerance) {
    if (t < 3) throw std::invalid_argument("certify: need t >= 3");
    if (c <= 0) throw std::invalid_argument("certify: need c > 0");
    SpectralCertificate cert;
    cert.n = g.vertex_count();
    cert.d = require_regular(g, "certify");
    cert.lambda = second_eigenvalue(g, tolerance);
    cert.tolerance = tolerance;
    cert.t = t;
    cert.c = c;
    if (cert.d == 0) {
        cert.threshold = 0.0;
    } else {
        cert.threshold =
            c * std::exp(t * std::log(static_cast<double>(cert.d)) -
                         (t - 1) * std::log(static_cast<double>(cert.n)));
    }
    cert.hypothesis_met = cert.lambda <= cert.threshold + tolerance;
    return cert;
}

long long edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
    long long e = 0;
    a.for_each([&](int v) { e += g.neighbors(v).and_count(b); });
    return e;
}

double eml_slack(const Graph& g, const VertexSet& a, const VertexSet& b, double lambda) {
    if (a.empty() || b.empty()) throw std::invalid_argument("eml_slack: empty vertex set");
    const int d = require_regular(g, "eml_slack");
    const double na = a.count(), nb = b.count();
    const double expected = static_cast<double>(d) / g.vertex_count() * na * nb;
    const double dev = std::abs(static_cast<double>(edges_between(g, a, b)) - expected);
    return lambda * std::sqrt(na * nb) - dev;
}

double lambda_floor(int d) {
    if (d < 1) throw std::invalid_argument("lambda_floor: need d >= 1");
    return std::sqrt(d / 2.0);
}

double degree_floor(long long n, int t) {
    if (n < 2) throw std::invalid_argument("degree_floor: need n >= 2");
    if (t < 2) throw std::invalid_argument("degree_floor: need t >= 2");
    const double exponent = 1.0 - 1.0 / (2.0 * t - 1.0);
    return std::pow(static_cast<double>(n), exponent) / std::pow(2.0, 1.0 / (2.0 * t - 1.0));
}

long long low_degree_count(const Graph& g, const VertexSet& u, double threshold) {
    long long count = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.neighbors(v).and_count(u) < threshold) ++count;
    return count;
}

BijumbledEstimate estimate_bijumbledness(const Graph& g, double p, int samples, std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("estimate_bijumbledness: p must be in (0,1]");
    if (samples < 1) throw std::invalid_argument("estimate_bijumbledness: need samples >= 1");
    const int n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("estimate_bijumbledness: empty graph");

    std::mt19937_64 gen(split_seed(seed, 17));
    auto random_subset = [&](int size) {
        VertexSet s(n);
        int placed = 0;
        while (placed < size) {
            int v = bounded_int(gen, n);
            if (!s.test(v)) {
                s.set(v);
                ++placed;
            }
        }
        return s;
    };

    auto discrepancy = [&](const VertexSet& a, const VertexSet& b) {
        const double na = a.count(), nb = b.count();
        const double dev = std::abs(static_cast<double>(edges_between(g, a, b)) - p * na * nb);
        return dev / std::sqrt(na * nb);
    };

    BijumbledEstimate est;
    est.p = p;
    est.samples = samples;
    est.seed = seed;
    const VertexSet full = VertexSet::full(n);
    est.lambda_lower_bound = discrepancy(full, full);
    for (int k = 1; k < samples; ++k) {
        const VertexSet a = random_subset(1 + bounded_int(gen, n));
        const VertexSet b = random_subset(1 + bounded_int(gen, n));
        est.lambda_lower_bound = std::max(est.lambda_lower_bound, discrepancy(a, b));
    }
    return est;
}

std::string SpectralCertificate::to_json() const {
    char buf[512];
    auto real = [](double v) {
        char b[64];
        std::snprintf(b, sizeof b, "%.12g", v);
        return std::string(b);
    };
    std::snprintf(buf, sizeof buf,
                  "{\"n\": %d, \"d\": %d, \"lambda\": %s, \"t\": %d, \"c\": %s, "
                  "\"threshold\": %s, \"hypothesis_met\": %s, \"tolerance\": %s}",
                  n, d, real(lambda).c_str(), t, real(c).c_str(), real(threshold).c_str(),
                  hypothesis_met ? "true" : "false", real(tolerance).c_str());
    return buf;
}

} // namespace ktf
