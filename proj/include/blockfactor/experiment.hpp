#pragma once
#include "solvers.hpp"
#include <cstdint>
#include <string>
#include <vector>

namespace blockfactor {

struct ExperimentSpec {
    std::string benchmark = "gn";            // gn | lfr
    std::vector<double> values;              // z_out or mu sweep points
    std::vector<Algorithm> algorithms = {Algorithm::kl, Algorithm::lse};
    int trials = 10;
    int iterations = 500;
    uint64_t base_seed = 42;
    int communities = 4;                     // GN only; LFR fits the planted count
    int restarts = 3;
};

struct SweepRow {
    std::string benchmark;
    double param = 0.0;
    Algorithm algorithm = Algorithm::kl;
    int trial = 0;
    uint64_t seed = 0;
    double nmi_value = 0.0;
    double objective = 0.0;
    std::string status = "ok";               // "ok" or a failure message
};

struct Aggregate {
    std::string benchmark;
    double param = 0.0;
    Algorithm algorithm = Algorithm::kl;
    int trials = 0;                          // rows with status ok
    double mean_nmi = 0.0;
    double std_nmi = 0.0;                    // sample standard deviation
};

struct ExperimentResult {
    std::vector<SweepRow> rows;              // (param, algorithm, trial) order
    std::vector<Aggregate> aggregates;       // (param, algorithm) order
};

// Runs every (value, trial) task: generate one instance with
// mix_seed(mix_seed(base_seed, value index), trial), fit each requested
// algorithm on it, score NMI against the planted labels. Tasks execute on a
// pool capped by BLOCKFACTOR_THREADS; row order and content do not depend
// on scheduling. A generation or fit failure fills that row's status and
// leaves nmi/objective as nan. Throws only if every row failed.
ExperimentResult run_sweep(const ExperimentSpec& spec);

// rows.csv and agg.csv under dir (created if missing). Numeric fields are
// printed with round-trip precision; reruns of the same spec are
// byte-identical.
void write_csvs(const ExperimentResult& result, const std::string& dir);

std::string algorithm_name(Algorithm a);

// Aggregates recomputed from rows (ok rows only): mean and sample std per
// (param, algorithm) in row order. Shared by run_sweep and the CSV tests.
std::vector<Aggregate> aggregate_rows(const std::vector<SweepRow>& rows);

} // namespace blockfactor
