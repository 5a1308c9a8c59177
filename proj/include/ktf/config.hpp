#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace ktf {

// Knobs for the factor pipeline and the absorber build. Optional fields are
// recomputed from t (and the host degree d) when absent.
struct PipelineConfig {
    int t = 3;
    std::optional<double> epsilon;      // default min(1/(300t), t^-2)
    std::optional<double> c;            // default epsilon^2 / 2^(t+1)
    std::optional<int> m_override;      // default floor(epsilon * d)
    std::optional<double> codegree_floor; // default max(d^2/(4n), 3(t-1))
    std::optional<int> stop_threshold;  // default floor(epsilon^2 * d)
    std::optional<double> dense_cutoff; // default epsilon / (2t)
    std::uint64_t seed = 0;
    bool enforce_spectral_hypothesis = false;
    // Independent restarts of the randomized stages before giving up; the
    // existence argument is probabilistic, so retrying with fresh randomness
    // is the constructive counterpart.
    int attempts = 16;
    double tolerance = 1e-8;

    double epsilon_value() const {
        if (epsilon) return *epsilon;
        return std::min(1.0 / (300.0 * t), 1.0 / (static_cast<double>(t) * t));
    }

    double c_value() const {
        if (c) return *c;
        const double e = epsilon_value();
        return e * e / std::pow(2.0, t + 1);
    }

    double dense_cutoff_value() const {
        if (dense_cutoff) return *dense_cutoff;
        return epsilon_value() / (2.0 * t);
    }

    int m_value(int d) const {
        if (m_override) return *m_override;
        return static_cast<int>(std::floor(epsilon_value() * d));
    }

    int stop_threshold_value(int d) const {
        if (stop_threshold) return *stop_threshold;
        const double e = epsilon_value();
        return static_cast<int>(std::floor(e * e * d));
    }

    double codegree_floor_value(int n, int d) const {
        if (codegree_floor) return *codegree_floor;
        const double base = static_cast<double>(d) * d / (4.0 * n);
        return std::max(base, 3.0 * (t - 1));
    }

    void validate() const {
        if (t < 3) throw std::invalid_argument("config: need t >= 3");
        const double e = epsilon_value();
        if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("config: epsilon must be in (0,1)");
        if (!(c_value() > 0.0)) throw std::invalid_argument("config: c must be positive");
        if (attempts < 1) throw std::invalid_argument("config: need attempts >= 1");
        if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
    }
};

} // namespace ktf
