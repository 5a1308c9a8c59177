#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ktf/generators.hpp"
#include "ktf/graph.hpp"
#include "ktf/pipeline.hpp"
#include "ktf/rng.hpp"
#include "ktf/spectral.hpp"

namespace {

struct GenerateArgs {
    std::string family;
    int q = 0;
    int t = 0;
    int s = 0;
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
    std::string output;
};

ktf::Graph make_graph(const std::string& family, int q, int t, int s, int n, int d,
                      std::uint64_t seed) {
    if (family == "paley") {
        if (q <= 0) throw std::invalid_argument("paley family needs --q");
        return ktf::paley(q);
    }
    if (family == "multipartite") {
        if (t <= 0 || s <= 0) throw std::invalid_argument("multipartite family needs --t and --s");
        return ktf::complete_multipartite(t, s);
    }
    if (family == "regular") {
        if (n <= 0 || d < 0) throw std::invalid_argument("regular family needs --n and --d");
        return ktf::random_regular(n, d, seed);
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

int run_generate(const GenerateArgs& args) {
    const ktf::Graph g = make_graph(args.family, args.q, args.t, args.s, args.n, args.d, args.seed);
    ktf::write_edge_list_file(g, args.output);
    std::cout << "wrote " << args.family << " graph: n=" << g.vertex_count()
              << " m=" << g.edge_count() << " -> " << args.output << '\n';
    return 0;
}

int run_certify(const std::string& input, int t, std::optional<double> c, double tolerance) {
    const ktf::Graph g = ktf::load_edge_list_file(input);
    ktf::PipelineConfig defaults;
    defaults.t = t;
    const double c_value = c.value_or(defaults.c_value());
    const auto cert = ktf::certify(g, t, c_value, tolerance);
    std::cout << cert.to_json() << '\n';
    return 0;
}

int run_factor(const std::string& input, const ktf::PipelineConfig& cfg, const std::string& output) {
    const ktf::Graph g = ktf::load_edge_list_file(input);
    const auto result = ktf::kt_factor_detailed(g, cfg);

    nlohmann::ordered_json j;
    if (result.success()) {
        j = ktf::factor_to_json(std::get<ktf::KtFactor>(result.outcome));
    } else {
        j = ktf::failure_to_json(std::get<ktf::FailureReport>(result.outcome), g.vertex_count());
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + output + " for writing");
    out << j.dump(2) << '\n';

    if (result.certificate) std::cout << "certificate: " << result.certificate->to_json() << '\n';
    if (result.success()) {
        const auto& factor = std::get<ktf::KtFactor>(result.outcome);
        std::cout << "factor found: " << factor.cliques.size() << " cliques of order " << factor.t
                  << (result.used_exact_fallback ? " (exact fallback)" : "") << '\n';
        return 0;
    }
    const auto& failure = std::get<ktf::FailureReport>(result.outcome);
    std::cout << "pipeline failed at stage '" << ktf::stage_name(failure.stage) << "'\n";
    return 1;
}

int run_verify(const std::string& input, const std::string& factor_path) {
    const ktf::Graph g = ktf::load_edge_list_file(input);
    std::ifstream in(factor_path);
    if (!in) throw std::runtime_error("cannot open " + factor_path);
    nlohmann::json j;
    in >> j;
    if (j.contains("stage")) {
        std::cout << "FAIL: file records a pipeline failure, not a factor\n";
        return 1;
    }
    ktf::KtFactor factor = ktf::factor_from_json(j);
    if (factor.n == 0) factor.n = g.vertex_count();
    const auto report = ktf::verify_factor(g, factor);
    if (report.pass) {
        std::cout << "PASS: valid K_" << factor.t << "-factor with " << factor.cliques.size()
                  << " cliques\n";
        return 0;
    }
    std::cout << "FAIL:\n";
    for (const auto& v : report.violations) std::cout << "  " << v << '\n';
    return 1;
}

int run_bench(const std::string& spec_path, int runs, std::uint64_t seed, const std::string& output) {
    std::ifstream in(spec_path);
    if (!in) throw std::runtime_error("cannot open " + spec_path);
    nlohmann::json spec;
    in >> spec;
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + output + " for writing");

    int job_index = 0;
    for (const auto& job : spec.at("jobs")) {
        const std::string family = job.at("family").get<std::string>();
        for (int r = 0; r < runs; ++r) {
            const std::uint64_t run_seed =
                ktf::split_seed(seed, static_cast<std::uint64_t>(job_index) * 10007 +
                                          static_cast<std::uint64_t>(r));
            const ktf::Graph g =
                make_graph(family, job.value("q", 0), job.value("parts", 0), job.value("s", 0),
                           job.value("n", 0), job.value("d", 0), run_seed);

            ktf::PipelineConfig cfg;
            cfg.t = job.at("t").get<int>();
            if (job.contains("m")) cfg.m_override = job["m"].get<int>();
            if (job.contains("epsilon")) cfg.epsilon = job["epsilon"].get<double>();
            cfg.seed = run_seed;

            const auto start = std::chrono::steady_clock::now();
            const auto result = ktf::kt_factor_detailed(g, cfg);
            const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();

            nlohmann::ordered_json line;
            line["family"] = family;
            line["n"] = g.vertex_count();
            line["d"] = g.degree_profile().d.value_or(-1);
            line["t"] = cfg.t;
            line["seed"] = run_seed;
            line["outcome"] = result.success() ? "factor" : "failure";
            line["stage"] = result.success()
                                ? ""
                                : ktf::stage_name(std::get<ktf::FailureReport>(result.outcome).stage);
            line["millis"] = millis;
            out << line.dump() << '\n';
        }
        ++job_index;
    }
    std::cout << "bench results written to " << output << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clique-factor pipeline for (n,d,lambda)-graphs"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "emit a test graph as an edge list");
    gen->add_option("--family", gen_args.family, "paley | multipartite | regular")->required();
    gen->add_option("--q", gen_args.q, "paley: field size (prime, 1 mod 4)");
    gen->add_option("--t", gen_args.t, "multipartite: number of parts");
    gen->add_option("--s", gen_args.s, "multipartite: part size");
    gen->add_option("--n", gen_args.n, "regular: vertex count");
    gen->add_option("--d", gen_args.d, "regular: degree");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("-o,--output", gen_args.output, "output file")->required();

    std::string cert_input;
    int cert_t = 3;
    std::optional<double> cert_c;
    double cert_tolerance = 1e-8;
    auto* cert = app.add_subcommand("certify", "compute the spectral certificate");
    cert->add_option("--input", cert_input, "edge-list file")->required();
    cert->add_option("--t", cert_t, "clique order")->required();
    cert->add_option("--c", cert_c, "hypothesis constant (default from t)");
    cert->add_option("--tolerance", cert_tolerance, "eigensolver tolerance");

    std::string factor_input, factor_output;
    ktf::PipelineConfig factor_cfg;
    std::optional<int> factor_m;
    std::optional<double> factor_eps;
    auto* factor = app.add_subcommand("factor", "run the clique-factor pipeline");
    factor->add_option("--input", factor_input, "edge-list file")->required();
    factor->add_option("--t", factor_cfg.t, "clique order")->required();
    factor->add_option("--seed", factor_cfg.seed, "pipeline seed");
    factor->add_option("--m", factor_m, "flexibility override");
    factor->add_option("--epsilon", factor_eps, "epsilon override");
    factor->add_flag("--enforce-hypothesis", factor_cfg.enforce_spectral_hypothesis,
                     "fail when the spectral hypothesis does not hold");
    factor->add_option("-o,--output", factor_output, "output file for the factor/failure JSON")
        ->required();

    std::string verify_input, verify_factor_path;
    auto* verify = app.add_subcommand("verify", "check a factor file against a graph");
    verify->add_option("--input", verify_input, "edge-list file")->required();
    verify->add_option("--factor", verify_factor_path, "factor JSON file")->required();

    std::string bench_spec, bench_output;
    int bench_runs = 1;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "run pipeline jobs from a spec file");
    bench->add_option("--spec", bench_spec, "job spec JSON file")->required();
    bench->add_option("--runs", bench_runs, "runs per job")->required();
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("-o,--output", bench_output, "output JSON-lines file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return run_generate(gen_args);
        if (cert->parsed()) return run_certify(cert_input, cert_t, cert_c, cert_tolerance);
        if (factor->parsed()) {
            if (factor_m) factor_cfg.m_override = *factor_m;
            if (factor_eps) factor_cfg.epsilon = *factor_eps;
            return run_factor(factor_input, factor_cfg, factor_output);
        }
        if (verify->parsed()) return run_verify(verify_input, verify_factor_path);
        if (bench->parsed()) return run_bench(bench_spec, bench_runs, bench_seed, bench_output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
