#include "blockfactor/metrics.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace blockfactor {

namespace {

std::vector<int> densify(const std::vector<int>& labels, int& k_out) {
    std::map<int, int> table;
    for (int l : labels) table.emplace(l, 0);
    int next = 0;
    for (auto& kv : table) kv.second = next++;
    std::vector<int> dense(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) dense[i] = table[labels[i]];
    k_out = next;
    return dense;
}

} // namespace

Confusion confusion_counts(const std::vector<int>& implanted, const std::vector<int>& computed) {
    if (implanted.size() != computed.size())
        throw std::domain_error("confusion_counts: partitions must have equal length");
    int ka = 0, kb = 0;
    std::vector<int> a = densify(implanted, ka);
    std::vector<int> b = densify(computed, kb);
    Confusion c;
    c.n = static_cast<int>(a.size());
    c.k = std::max(ka, kb);
    if (c.k == 0) c.k = 1;
    c.counts = Matrix(c.k, c.k);
    c.row_sizes.assign(c.k, 0.0);
    c.col_sizes.assign(c.k, 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        c.counts(a[i], b[i]) += 1.0;
        c.row_sizes[a[i]] += 1.0;
        c.col_sizes[b[i]] += 1.0;
    }
    return c;
}

double nmi(const Confusion& c) {
    const double n = c.n;
    double denom_rows = 0.0, denom_cols = 0.0;
    for (int i = 0; i < c.k; ++i)
        if (c.row_sizes[i] > 0) denom_rows += c.row_sizes[i] * std::log(c.row_sizes[i] / n);
    for (int j = 0; j < c.k; ++j)
        if (c.col_sizes[j] > 0) denom_cols += c.col_sizes[j] * std::log(c.col_sizes[j] / n);
    if (denom_rows == 0.0 || denom_cols == 0.0) {
        // A single-community side zeroes the printed denominator. Declare 1
        // when the two partitions coincide as set partitions, else 0.
        bool permutation_like = true;
        for (int i = 0; i < c.k; ++i) {
            int in_row = 0;
            for (int j = 0; j < c.k; ++j)
                if (c.counts(i, j) > 0) ++in_row;
            if (in_row > 1) permutation_like = false;
        }
        for (int j = 0; j < c.k; ++j) {
            int in_col = 0;
            for (int i = 0; i < c.k; ++i)
                if (c.counts(i, j) > 0) ++in_col;
            if (in_col > 1) permutation_like = false;
        }
        return permutation_like ? 1.0 : 0.0;
    }
    double num = 0.0;
    for (int i = 0; i < c.k; ++i)
        for (int j = 0; j < c.k; ++j) {
            double nij = c.counts(i, j);
            if (nij > 0) num += nij * std::log(nij * n / (c.row_sizes[i] * c.col_sizes[j]));
        }
    return num / std::sqrt(denom_rows * denom_cols);
}

double nmi(const std::vector<int>& implanted, const std::vector<int>& computed) {
    return nmi(confusion_counts(implanted, computed));
}

} // namespace blockfactor
