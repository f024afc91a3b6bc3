#include "blockfactor/equivalence.hpp"
#include "blockfactor/graph.hpp"
#include "blockfactor/models.hpp"
#include "blockfactor/rng.hpp"
#include <cmath>

namespace blockfactor {

namespace {

constexpr double kPi = 3.14159265358979323846;

Matrix random_data(Rng& rng, int rows, int cols, bool symmetric) {
    Matrix a(rows, cols);
    if (symmetric) {
        for (int i = 0; i < rows; ++i)
            for (int j = i; j < cols; ++j) {
                double v = rng.uniform01() < 0.35 ? 0.0 : 3.0 * rng.uniform01();
                a(i, j) = v;
                a(j, i) = v;
            }
    } else {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                a(i, j) = rng.uniform01() < 0.35 ? 0.0 : 3.0 * rng.uniform01();
    }
    return a;
}

// Labels hitting every community at least once.
std::vector<int> surjective_labels(Rng& rng, int n, int c) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i < c ? i : static_cast<int>(rng.below(c));
    rng.shuffle(labels);
    return labels;
}

Matrix one_hot(const std::vector<int>& labels, int c) {
    Matrix g(static_cast<int>(labels.size()), c);
    for (size_t i = 0; i < labels.size(); ++i) g(static_cast<int>(i), labels[i]) = 1.0;
    return g;
}

Matrix positive_matrix(Rng& rng, int rows, int cols, bool symmetric) {
    Matrix w(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int s = symmetric ? r : 0; s < cols; ++s) {
            double v = 0.05 + rng.uniform01();
            w(r, s) = v;
            if (symmetric) w(s, r) = v;
        }
    return w;
}

Matrix column_stochastic(Rng& rng, int n, int c) {
    Matrix m(n, c);
    for (int r = 0; r < c; ++r) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            m(i, r) = 0.01 + rng.uniform01();
            sum += m(i, r);
        }
        for (int i = 0; i < n; ++i) m(i, r) /= sum;
    }
    return m;
}

struct Tracker {
    double worst = 0.0;
    void note(double value, double expected) {
        double d = std::abs(value - expected);
        if (d > worst) worst = d;
    }
};

double suite_standard(Rng& rng, int instances, int draws) {
    Tracker tr;
    for (int k = 0; k < instances; ++k) {
        int n = 5 + static_cast<int>(rng.below(16));
        int c = 2 + static_cast<int>(rng.below(3));
        Matrix a = random_data(rng, n, n, true);
        double constant = data_constant(a);
        for (int d = 0; d < draws; ++d) {
            std::vector<int> labels = surjective_labels(rng, n, c);
            Matrix w = positive_matrix(rng, c, c, true);
            Factors f{one_hot(labels, c), w};
            tr.note(kl_objective(a, f) + sbm_loglik(a, labels, w), constant);
        }
    }
    return tr.worst;
}

double suite_degree_corrected(Rng& rng, int instances, int draws) {
    Tracker tr;
    for (int k = 0; k < instances; ++k) {
        int n = 5 + static_cast<int>(rng.below(16));
        int c = 2 + static_cast<int>(rng.below(3));
        Matrix a = random_data(rng, n, n, true);
        double constant = data_constant(a);
        for (int d = 0; d < draws; ++d) {
            std::vector<int> labels = surjective_labels(rng, n, c);
            // theta normalized within each community
            std::vector<double> theta(n);
            std::vector<double> totals(c, 0.0);
            for (int i = 0; i < n; ++i) {
                theta[i] = 0.05 + rng.uniform01();
                totals[labels[i]] += theta[i];
            }
            for (int i = 0; i < n; ++i) theta[i] /= totals[labels[i]];
            Matrix w = positive_matrix(rng, c, c, true);
            DCFactors f{theta, one_hot(labels, c), w};
            tr.note(dc_objective(a, f) + dcsbm_loglik(a, theta, labels, w), constant);
        }
    }
    return tr.worst;
}

double suite_bipartite(Rng& rng, int instances, int draws) {
    Tracker tr;
    for (int k = 0; k < instances; ++k) {
        int n1 = 3 + static_cast<int>(rng.below(8));
        int n2 = 3 + static_cast<int>(rng.below(8));
        Matrix b = random_data(rng, n1, n2, false);
        Matrix a = bipartite_embed(b);
        double constant = data_constant(a);
        int c1 = 1 + static_cast<int>(rng.below(2));
        int c2 = 1 + static_cast<int>(rng.below(2));
        int c = c1 + c2;
        TypeMask mask;
        mask.t = Matrix(c, c);
        for (int r = 0; r < c; ++r)
            for (int s = 0; s < c; ++s) mask.t(r, s) = (r < c1) != (s < c1) ? 1.0 : 0.0;
        for (int d = 0; d < draws; ++d) {
            // communities are typed: part-one nodes use 0..c1-1, part-two the rest
            std::vector<int> left = surjective_labels(rng, n1, c1);
            std::vector<int> right = surjective_labels(rng, n2, c2);
            std::vector<int> labels(n1 + n2);
            for (int i = 0; i < n1; ++i) labels[i] = left[i];
            for (int j = 0; j < n2; ++j) labels[n1 + j] = c1 + right[j];
            Matrix w = positive_matrix(rng, c, c, true);
            Factors f{one_hot(labels, c), w};
            tr.note(bipartite_objective(a, f, mask) + bipartite_loglik(a, labels, w, mask),
                    constant);
        }
    }
    return tr.worst;
}

double suite_normal(Rng& rng, int instances, int draws) {
    Tracker tr;
    const double sigma = 1.0;
    for (int k = 0; k < instances; ++k) {
        int n = 5 + static_cast<int>(rng.below(16));
        int c = 2 + static_cast<int>(rng.below(3));
        Matrix a = random_data(rng, n, n, true);
        double constant = -2.0 * sigma * sigma * static_cast<double>(n) * n *
                          std::log(std::sqrt(2.0 * kPi) * sigma);
        for (int d = 0; d < draws; ++d) {
            std::vector<int> labels = surjective_labels(rng, n, c);
            Matrix w = positive_matrix(rng, c, c, true);
            Factors f{one_hot(labels, c), w};
            double value = lse_objective(a, f) +
                           2.0 * sigma * sigma * normal_loglik(a, labels, w, sigma);
            tr.note(value, constant);
        }
    }
    return tr.worst;
}

double suite_directed(Rng& rng, int instances, int draws) {
    Tracker tr;
    for (int k = 0; k < instances; ++k) {
        int n = 5 + static_cast<int>(rng.below(16));
        int c = 2 + static_cast<int>(rng.below(3));
        Matrix a = random_data(rng, n, n, false);
        double constant = data_constant(a) + 1.0;
        for (int d = 0; d < draws; ++d) {
            DirectedFactors f;
            f.f = column_stochastic(rng, n, c);
            f.h = column_stochastic(rng, n, c);
            f.w = positive_matrix(rng, c, c, false);
            double total = 0.0;
            for (double v : f.w.a) total += v;
            for (double& v : f.w.a) v /= total;
            tr.note(directed_objective(a, f) + directed_logmass(a, f), constant);
        }
    }
    return tr.worst;
}

double suite_signed(Rng& rng, int instances, int draws) {
    Tracker tr;
    for (int k = 0; k < instances; ++k) {
        int n = 5 + static_cast<int>(rng.below(16));
        int c = 2 + static_cast<int>(rng.below(3));
        Matrix signed_a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double u = rng.uniform01();
                double v = u < 0.4 ? 0.0 : (u < 0.7 ? 3.0 * rng.uniform01() : -3.0 * rng.uniform01());
                signed_a(i, j) = v;
                signed_a(j, i) = v;
            }
        Matrix aplus(n, n), aminus(n, n);
        for (size_t t = 0; t < signed_a.a.size(); ++t) {
            if (signed_a.a[t] > 0) aplus.a[t] = signed_a.a[t];
            else if (signed_a.a[t] < 0) aminus.a[t] = -signed_a.a[t];
        }
        double constant = data_constant(aplus) + data_constant(aminus) + 1.0;
        for (int d = 0; d < draws; ++d) {
            SignedFactors f;
            f.h = column_stochastic(rng, n, c);
            Matrix u = positive_matrix(rng, c, c, true);
            double total = 0.0;
            for (double v : u.a) total += v;
            f.w1 = Matrix(c, c);
            f.w2 = Matrix(c, c);
            for (int r = 0; r < c; ++r)
                for (int s = 0; s < c; ++s) {
                    if (r == s) f.w1(r, s) = u(r, s) / total;
                    else f.w2(r, s) = u(r, s) / total;
                }
            tr.note(signed_objective(aplus, aminus, f) + signed_logmass(aplus, aminus, f),
                    constant);
        }
    }
    return tr.worst;
}

} // namespace

std::vector<EquivalenceReport> run_equivalence_suites(uint64_t seed, int instances, int draws) {
    std::vector<EquivalenceReport> reports;
    struct Entry {
        const char* name;
        double (*run)(Rng&, int, int);
    };
    const Entry entries[] = {
        {"standard", suite_standard},        {"degree_corrected", suite_degree_corrected},
        {"bipartite", suite_bipartite},      {"normal", suite_normal},
        {"directed", suite_directed},        {"signed", suite_signed},
    };
    int index = 0;
    for (const auto& e : entries) {
        Rng rng(mix_seed(seed, index++));
        EquivalenceReport r;
        r.model = e.name;
        r.instances = instances;
        r.draws = draws;
        r.max_deviation = e.run(rng, instances, draws);
        reports.push_back(r);
    }
    return reports;
}

} // namespace blockfactor
