#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace blockfactor {

// One row of the objective-vs-likelihood constancy check: for a fixed data
// matrix the sum (model objective + matching log-likelihood) must not move
// when the partition and parameters move.
struct EquivalenceReport {
    std::string model;
    int instances = 0;
    int draws = 0;
    double max_deviation = 0.0;
};

// Runs all six suites (standard, degree_corrected, bipartite, normal,
// directed, signed) on random instances with n <= 20 and c <= 4:
// `instances` data matrices per model, `draws` random (labels, parameters)
// pairs per matrix. max_deviation is the worst |sum - expected constant|.
std::vector<EquivalenceReport> run_equivalence_suites(uint64_t seed, int instances, int draws);

} // namespace blockfactor
