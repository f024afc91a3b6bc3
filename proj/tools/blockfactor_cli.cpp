#include "CLI11.hpp"
#include "blockfactor/equivalence.hpp"
#include "blockfactor/experiment.hpp"
#include "blockfactor/graph.hpp"
#include "blockfactor/metrics.hpp"
#include "blockfactor/solvers.hpp"
#include <charconv>
#include <clocale>
#include <cstdio>
#include <string>
#include <vector>

namespace {

std::string fmt_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string tok = csv.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"Community detection by block-structured nonnegative matrix factorization"};
    app.require_subcommand(1);

    // sweep
    std::string benchmark = "gn", param_values, algorithms = "both", out_dir;
    int trials = 10, iterations = 500, communities = 4, restarts = 3;
    uint64_t seed = 42;
    CLI::App* sweep = app.add_subcommand("sweep", "Generate instances, fit, and score NMI over a parameter sweep");
    sweep->add_option("--benchmark", benchmark, "Benchmark family")->check(CLI::IsMember({"gn", "lfr"}));
    sweep->add_option("--param-values", param_values, "Comma list of z_out (gn) or mu (lfr) values")->required();
    sweep->add_option("--algorithms", algorithms, "kl, lse, or both")->check(CLI::IsMember({"kl", "lse", "both"}));
    sweep->add_option("--trials", trials, "Trials per parameter value");
    sweep->add_option("--iterations", iterations, "Multiplicative-update iterations per fit");
    sweep->add_option("--seed", seed, "Base seed; per-trial seeds derive from it");
    sweep->add_option("--communities", communities, "Fitted community count for gn (lfr uses the planted count)");
    sweep->add_option("--restarts", restarts, "Random restarts per fit, best final objective kept");
    sweep->add_option("--out", out_dir, "Directory for rows.csv and agg.csv")->required();

    // fit
    std::string fit_in, fit_out, fit_algorithm = "kl";
    int fit_c = 2, fit_iterations = 500, fit_restarts = 3;
    uint64_t fit_seed = 42;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit one undirected edge list and write hard labels");
    fit_cmd->add_option("--in", fit_in, "Edge list file (src dst [weight] per line)")->required();
    fit_cmd->add_option("--communities", fit_c, "Community count")->required();
    fit_cmd->add_option("--algorithm", fit_algorithm, "kl or lse")->check(CLI::IsMember({"kl", "lse"}));
    fit_cmd->add_option("--iterations", fit_iterations, "Update iterations");
    fit_cmd->add_option("--seed", fit_seed, "Seed");
    fit_cmd->add_option("--restarts", fit_restarts, "Random restarts");
    fit_cmd->add_option("--out", fit_out, "Output label file")->required();

    // eval
    std::string eval_a, eval_b;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Print NMI between two label files");
    eval_cmd->add_option("labels_a", eval_a, "First label file")->required();
    eval_cmd->add_option("labels_b", eval_b, "Second label file")->required();

    // verify
    uint64_t verify_seed = 2024;
    int verify_trials = 100, verify_draws = 20;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Check that each model objective plus its log-likelihood is constant in the parameters");
    verify_cmd->add_option("--seed", verify_seed, "Seed");
    verify_cmd->add_option("--trials", verify_trials, "Random instances per model");
    verify_cmd->add_option("--draws", verify_draws, "Random (labels, parameters) draws per instance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            blockfactor::ExperimentSpec spec;
            spec.benchmark = benchmark;
            spec.values = parse_values(param_values);
            spec.algorithms.clear();
            if (algorithms == "both" || algorithms == "kl")
                spec.algorithms.push_back(blockfactor::Algorithm::kl);
            if (algorithms == "both" || algorithms == "lse")
                spec.algorithms.push_back(blockfactor::Algorithm::lse);
            spec.trials = trials;
            spec.iterations = iterations;
            spec.base_seed = seed;
            spec.communities = communities;
            spec.restarts = restarts;
            blockfactor::ExperimentResult result = blockfactor::run_sweep(spec);
            blockfactor::write_csvs(result, out_dir);
            std::printf("wrote %zu rows and %zu aggregates under %s\n", result.rows.size(),
                        result.aggregates.size(), out_dir.c_str());
        } else if (*fit_cmd) {
            blockfactor::Graph g =
                blockfactor::load_edge_list_file(fit_in, blockfactor::GraphKind::undirected);
            blockfactor::SolverConfig cfg;
            cfg.iterations = fit_iterations;
            cfg.seed = fit_seed;
            cfg.algorithm = blockfactor::algorithm_from_name(fit_algorithm);
            cfg.communities = fit_c;
            cfg.restarts = fit_restarts;
            blockfactor::FitResult res = blockfactor::fit(blockfactor::adjacency(g), cfg);
            blockfactor::save_labels_file(fit_out, res.labels);
            std::printf("%s\n", fmt_shortest(res.trace.back()).c_str());
        } else if (*eval_cmd) {
            std::vector<int> a = blockfactor::load_labels_file(eval_a);
            std::vector<int> b = blockfactor::load_labels_file(eval_b);
            if (a.empty() || b.empty()) throw std::runtime_error("empty label file");
            std::printf("%.6f\n", blockfactor::nmi(a, b));
        } else if (*verify_cmd) {
            auto reports =
                blockfactor::run_equivalence_suites(verify_seed, verify_trials, verify_draws);
            bool ok = true;
            for (const auto& r : reports) {
                bool pass = r.max_deviation < 1e-9;
                ok = ok && pass;
                std::printf("%-17s max deviation %.3e over %d instances x %d draws  %s\n",
                            r.model.c_str(), r.max_deviation, r.instances, r.draws,
                            pass ? "PASS" : "FAIL");
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
