#include "blockfactor/experiment.hpp"
#include "blockfactor/generators.hpp"
#include "blockfactor/graph.hpp"
#include "blockfactor/kernels.hpp"
#include "blockfactor/metrics.hpp"
#include "blockfactor/rng.hpp"
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace blockfactor {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Shortest round-trip decimal form; locale-independent by construction.
std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct Task {
    int param_index;
    int trial;
};

} // namespace

std::string algorithm_name(Algorithm a) { return a == Algorithm::kl ? "kl" : "lse"; }

std::vector<Aggregate> aggregate_rows(const std::vector<SweepRow>& rows) {
    std::vector<Aggregate> aggs;
    size_t i = 0;
    while (i < rows.size()) {
        size_t j = i;
        while (j < rows.size() && rows[j].param == rows[i].param &&
               rows[j].algorithm == rows[i].algorithm)
            ++j;
        Aggregate g;
        g.benchmark = rows[i].benchmark;
        g.param = rows[i].param;
        g.algorithm = rows[i].algorithm;
        double sum = 0.0;
        int k = 0;
        for (size_t t = i; t < j; ++t)
            if (rows[t].status == "ok") {
                sum += rows[t].nmi_value;
                ++k;
            }
        g.trials = k;
        if (k == 0) {
            g.mean_nmi = kNan;
            g.std_nmi = kNan;
        } else {
            g.mean_nmi = sum / k;
            double ss = 0.0;
            for (size_t t = i; t < j; ++t)
                if (rows[t].status == "ok") {
                    double d = rows[t].nmi_value - g.mean_nmi;
                    ss += d * d;
                }
            g.std_nmi = k > 1 ? std::sqrt(ss / (k - 1)) : 0.0;
        }
        aggs.push_back(g);
        i = j;
    }
    return aggs;
}

ExperimentResult run_sweep(const ExperimentSpec& spec) {
    if (spec.benchmark != "gn" && spec.benchmark != "lfr")
        throw std::domain_error("run_sweep: benchmark must be gn or lfr");
    if (spec.values.empty()) throw std::domain_error("run_sweep: no sweep values");
    if (spec.trials < 1) throw std::domain_error("run_sweep: trials must be >= 1");
    if (spec.algorithms.empty()) throw std::domain_error("run_sweep: no algorithms");

    const int n_params = static_cast<int>(spec.values.size());
    const int n_algs = static_cast<int>(spec.algorithms.size());
    const int n_rows = n_params * n_algs * spec.trials;
    std::vector<SweepRow> rows(n_rows);

    std::vector<Task> tasks;
    tasks.reserve(static_cast<size_t>(n_params) * spec.trials);
    for (int p = 0; p < n_params; ++p)
        for (int t = 0; t < spec.trials; ++t) tasks.push_back({p, t});

    auto row_at = [&](int p, int a, int t) -> SweepRow& {
        return rows[(static_cast<size_t>(p) * n_algs + a) * spec.trials + t];
    };

    auto run_task = [&](const Task& task) {
        const double value = spec.values[task.param_index];
        const uint64_t seed = mix_seed(mix_seed(spec.base_seed, task.param_index), task.trial);
        for (int a = 0; a < n_algs; ++a) {
            SweepRow& row = row_at(task.param_index, a, task.trial);
            row.benchmark = spec.benchmark;
            row.param = value;
            row.algorithm = spec.algorithms[a];
            row.trial = task.trial;
            row.seed = seed;
            row.nmi_value = kNan;
            row.objective = kNan;
        }
        PlantedInstance inst;
        try {
            if (spec.benchmark == "gn") {
                GNSpec g;
                g.z_out = value;
                inst = gn_generate(g, seed);
            } else {
                LFRSpec l;
                l.mu = value;
                inst = lfr_generate(l, seed);
            }
        } catch (const std::exception& e) {
            for (int a = 0; a < n_algs; ++a)
                row_at(task.param_index, a, task.trial).status = e.what();
            return;
        }
        Matrix adj = adjacency(inst.graph);
        for (int a = 0; a < n_algs; ++a) {
            SweepRow& row = row_at(task.param_index, a, task.trial);
            try {
                SolverConfig cfg;
                cfg.iterations = spec.iterations;
                cfg.seed = seed;
                cfg.algorithm = spec.algorithms[a];
                cfg.communities = spec.benchmark == "gn" ? spec.communities : inst.communities;
                cfg.restarts = spec.restarts;
                FitResult res = fit(adj, cfg);
                row.nmi_value = nmi(inst.labels, res.labels);
                row.objective = res.trace.back();
                row.status = "ok";
            } catch (const std::exception& e) {
                row.status = e.what();
            }
        }
    };

    // Trials parallelize across a pool; per-fit kernel threading is turned
    // off meanwhile so the two layers do not oversubscribe each other.
    // Row content is a pure function of (spec, task), so scheduling cannot
    // change the output.
    const int workers =
        std::min<int>(thread_budget(), static_cast<int>(tasks.size()));
    bool prev_parallel = kernels_parallel();
    if (workers > 1) set_kernels_parallel(false);
    std::atomic<size_t> next{0};
    auto drain = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= tasks.size()) break;
            run_task(tasks[k]);
        }
    };
    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
        for (auto& th : pool) th.join();
    }
    set_kernels_parallel(prev_parallel);

    bool any_ok = false;
    for (const auto& r : rows)
        if (r.status == "ok") any_ok = true;
    if (!any_ok) throw std::runtime_error("run_sweep: every row failed: " + rows.front().status);

    ExperimentResult result;
    result.rows = std::move(rows);
    result.aggregates = aggregate_rows(result.rows);
    return result;
}

void write_csvs(const ExperimentResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(std::filesystem::path(dir) / "rows.csv");
        if (!out) throw std::runtime_error("cannot write rows.csv under " + dir);
        out << "benchmark,param,algorithm,trial,seed,nmi,objective,status\n";
        for (const auto& r : result.rows) {
            std::string status = r.status;
            for (char& ch : status)
                if (ch == ',' || ch == '\n') ch = ';';
            out << r.benchmark << ',' << fmt(r.param) << ',' << algorithm_name(r.algorithm) << ','
                << r.trial << ',' << r.seed << ',' << fmt(r.nmi_value) << ',' << fmt(r.objective)
                << ',' << status << '\n';
        }
    }
    {
        std::ofstream out(std::filesystem::path(dir) / "agg.csv");
        if (!out) throw std::runtime_error("cannot write agg.csv under " + dir);
        out << "benchmark,param,algorithm,trials,mean_nmi,std_nmi\n";
        for (const auto& g : result.aggregates) {
            out << g.benchmark << ',' << fmt(g.param) << ',' << algorithm_name(g.algorithm) << ','
                << g.trials << ',' << fmt(g.mean_nmi) << ',' << fmt(g.std_nmi) << '\n';
        }
    }
}

} // namespace blockfactor
