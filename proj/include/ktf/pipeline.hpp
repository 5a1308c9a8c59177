#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ktf/absorber.hpp"
#include "ktf/cliques.hpp"
#include "ktf/config.hpp"
#include "ktf/graph.hpp"
#include "ktf/spectral.hpp"

namespace ktf {

enum class Stage { divisibility, certification, absorber, tiling, sdr, final_tiling, absorption };

std::string stage_name(Stage s);

struct FailureReport {
    Stage stage = Stage::divisibility;
    nlohmann::ordered_json diagnostics;
    Tiling partial; // always satisfies the tiling invariants; may be empty
};

struct PipelineResult {
    std::variant<KtFactor, FailureReport> outcome;
    std::optional<SpectralCertificate> certificate;
    bool dense_regime = false;
    bool used_exact_fallback = false;
    int attempts_used = 0;

    bool success() const { return std::holds_alternative<KtFactor>(outcome); }
};

// Full factor pipeline: certify, build the absorbing structure, tile the
// complement, cover the leftover from Z1 via disjoint representatives, tile
// Z1 down to the flexible margin, absorb. Successes are self-verified before
// they are returned; a factor failing self-verification throws
// std::logic_error.
PipelineResult kt_factor_detailed(const Graph& g, const PipelineConfig& cfg);

std::variant<KtFactor, FailureReport> kt_factor(const Graph& g, const PipelineConfig& cfg);

struct FactorReport {
    bool pass = false;
    std::vector<std::string> violations;
};

// Independent factor check: n/t cliques, order t each, pairwise disjoint,
// full coverage, all pairs adjacent in g.
FactorReport verify_factor(const Graph& g, const KtFactor& factor);

struct FractionalReport {
    bool pass = false;
    double max_violation = 0.0;
};

// Checks sum of weights over cliques containing v equals 1 for every vertex.
// Throws if a key is not a t-clique of g or a weight is below -tol.
FractionalReport verify_fractional_factor(const Graph& g,
                                          const std::vector<std::pair<Clique, double>>& weights,
                                          int t, double tol);

nlohmann::ordered_json factor_to_json(const KtFactor& factor);
KtFactor factor_from_json(const nlohmann::json& j);
nlohmann::ordered_json failure_to_json(const FailureReport& report, int n);

} // namespace ktf
