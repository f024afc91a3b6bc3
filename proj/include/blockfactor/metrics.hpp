#pragma once
#include "matrix.hpp"
#include <vector>

namespace blockfactor {

// Contingency table between an implanted and a computed partition, padded to
// a common k = max of the two distinct-label counts.
struct Confusion {
    int n = 0;
    int k = 0;
    Matrix counts;             // k x k, implanted row, computed column
    std::vector<double> row_sizes;
    std::vector<double> col_sizes;
};

// Both label vectors are relabeled to dense 0..k-1 (ascending original
// label order) before counting. Throws on length mismatch.
Confusion confusion_counts(const std::vector<int>& implanted, const std::vector<int>& computed);

// Normalized mutual information, natural log:
//   sum_ij n_ij log(n_ij n / (n_i n_j)) /
//   sqrt( (sum_i n_i log(n_i/n)) (sum_j n_j log(n_j/n)) ).
// Zero-count terms contribute 0. If either partition has a single
// community the printed denominator vanishes; the value is then declared 1
// when the partitions are identical as set partitions and 0 otherwise.
double nmi(const std::vector<int>& implanted, const std::vector<int>& computed);
double nmi(const Confusion& c);

} // namespace blockfactor
