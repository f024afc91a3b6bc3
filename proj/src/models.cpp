#include "blockfactor/models.hpp"
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blockfactor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// sum_ij [a log(a/m) + m - a] over dense a and any callable m(i,j).
template <typename ModelFn>
double kl_sum(const Matrix& a, ModelFn m) {
    double total = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            double av = a(i, j);
            double mv = m(i, j);
            if (av > 0.0) {
                if (mv <= 0.0) return kInf;
                total += av * std::log(av / mv) + mv - av;
            } else {
                total += mv;
            }
        }
    return total;
}

Matrix model_matrix(const Matrix& g, const Matrix& w) {
    const int n = g.rows, c = g.cols;
    Matrix gw(n, c);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < c; ++s) {
            double acc = 0.0;
            for (int r = 0; r < c; ++r) acc += g(i, r) * w(r, s);
            gw(i, s) = acc;
        }
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int r = 0; r < c; ++r) acc += gw(i, r) * g(j, r);
            m(i, j) = acc;
        }
    return m;
}

Matrix mixed_model_matrix(const Matrix& f, const Matrix& w, const Matrix& h) {
    const int n = f.rows, c = f.cols;
    Matrix fw(n, c);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < c; ++s) {
            double acc = 0.0;
            for (int r = 0; r < c; ++r) acc += f(i, r) * w(r, s);
            fw(i, s) = acc;
        }
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int r = 0; r < c; ++r) acc += fw(i, r) * h(j, r);
            m(i, j) = acc;
        }
    return m;
}

int label_count(const std::vector<int>& labels) {
    int c = 0;
    for (int l : labels) {
        if (l < 0) throw std::domain_error("negative community label");
        if (l + 1 > c) c = l + 1;
    }
    return c;
}

} // namespace

double kl_objective(const Matrix& a, const Factors& f) {
    Matrix m = model_matrix(f.g, f.w);
    return kl_sum(a, [&](int i, int j) { return m(i, j); });
}

double lse_objective(const Matrix& a, const Factors& f) {
    Matrix m = model_matrix(f.g, f.w);
    double total = 0.0;
    for (size_t k = 0; k < a.a.size(); ++k) {
        double d = a.a[k] - m.a[k];
        total += d * d;
    }
    return total;
}

double dc_objective(const Matrix& a, const DCFactors& f) {
    Matrix m = model_matrix(f.g, f.w);
    return kl_sum(a, [&](int i, int j) { return f.theta[i] * f.theta[j] * m(i, j); });
}

double bipartite_objective(const Matrix& a, const Factors& f, const TypeMask& t) {
    Matrix masked = f.w;
    for (size_t k = 0; k < masked.a.size(); ++k) masked.a[k] *= t.t.a[k];
    Matrix m = model_matrix(f.g, masked);
    return kl_sum(a, [&](int i, int j) { return m(i, j); });
}

double directed_objective(const Matrix& a, const DirectedFactors& f) {
    Matrix m = mixed_model_matrix(f.f, f.w, f.h);
    return kl_sum(a, [&](int i, int j) { return m(i, j); });
}

double signed_objective(const Matrix& aplus, const Matrix& aminus, const SignedFactors& f) {
    Matrix mplus = model_matrix(f.h, f.w1);
    Matrix mminus = model_matrix(f.h, f.w2);
    double first = kl_sum(aplus, [&](int i, int j) { return mplus(i, j); });
    double second = kl_sum(aminus, [&](int i, int j) { return mminus(i, j); });
    return first + second;
}

BlockStats block_stats(const Matrix& a, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != a.rows || a.rows != a.cols)
        throw std::domain_error("block_stats: labels must cover a square adjacency");
    const int c = label_count(labels);
    BlockStats s;
    s.labels = labels;
    s.sizes.assign(c, 0);
    s.edge_counts = Matrix(c, c);
    for (int l : labels) ++s.sizes[l];
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) s.edge_counts(labels[i], labels[j]) += a(i, j);
    return s;
}

Matrix mle_block_params(const BlockStats& stats) {
    const int c = static_cast<int>(stats.sizes.size());
    Matrix w(c, c);
    for (int r = 0; r < c; ++r)
        for (int s = 0; s < c; ++s) {
            double pairs = static_cast<double>(stats.sizes[r]) * stats.sizes[s];
            w(r, s) = pairs > 0 ? stats.edge_counts(r, s) / pairs : 0.0;
        }
    return w;
}

double sbm_loglik(const Matrix& a, const std::vector<int>& labels, const Matrix& w) {
    BlockStats s = block_stats(a, labels);
    const int c = static_cast<int>(s.sizes.size());
    if (w.rows < c || w.cols < c) throw std::domain_error("sbm_loglik: W smaller than the label range");
    double total = 0.0;
    for (int r = 0; r < c; ++r)
        for (int t = 0; t < c; ++t) {
            double m = s.edge_counts(r, t);
            double wv = w(r, t);
            if (m > 0.0) {
                if (wv <= 0.0) return -kInf;
                total += m * std::log(wv);
            }
            total -= static_cast<double>(s.sizes[r]) * s.sizes[t] * wv;
        }
    return total;
}

double dcsbm_loglik(const Matrix& a, const std::vector<double>& theta,
                    const std::vector<int>& labels, const Matrix& w) {
    BlockStats s = block_stats(a, labels);
    const int c = static_cast<int>(s.sizes.size());
    double total = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            double av = a(i, j);
            if (av > 0.0) {
                double tt = theta[i] * theta[j];
                if (tt <= 0.0) return -kInf;
                total += av * std::log(tt);
            }
        }
    for (int r = 0; r < c; ++r)
        for (int t = 0; t < c; ++t) {
            double m = s.edge_counts(r, t);
            double wv = w(r, t);
            if (m > 0.0) {
                if (wv <= 0.0) return -kInf;
                total += m * std::log(wv);
            }
            total -= wv;
        }
    return total;
}

double bipartite_loglik(const Matrix& a, const std::vector<int>& labels, const Matrix& w,
                        const TypeMask& t) {
    BlockStats s = block_stats(a, labels);
    const int c = static_cast<int>(s.sizes.size());
    double total = 0.0;
    for (int r = 0; r < c; ++r)
        for (int u = 0; u < c; ++u) {
            if (t.t(r, u) == 0.0) continue;
            double m = s.edge_counts(r, u);
            double wv = w(r, u);
            if (m > 0.0) {
                if (wv <= 0.0) return -kInf;
                total += m * std::log(wv);
            }
            total -= static_cast<double>(s.sizes[r]) * s.sizes[u] * wv;
        }
    return total;
}

double normal_loglik(const Matrix& a, const std::vector<int>& labels, const Matrix& w,
                     double sigma) {
    const double n2 = static_cast<double>(a.rows) * a.cols;
    double ss = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            double d = a(i, j) - w(labels[i], labels[j]);
            ss += d * d;
        }
    return -n2 * std::log(std::sqrt(2.0 * kPi) * sigma) - ss / (2.0 * sigma * sigma);
}

double directed_logmass(const Matrix& a, const DirectedFactors& f) {
    Matrix m = mixed_model_matrix(f.f, f.w, f.h);
    double total = 0.0;
    for (size_t k = 0; k < a.a.size(); ++k) {
        double av = a.a[k];
        if (av > 0.0) {
            if (m.a[k] <= 0.0) return -kInf;
            total += av * std::log(m.a[k]);
        }
    }
    return total;
}

double signed_logmass(const Matrix& aplus, const Matrix& aminus, const SignedFactors& f) {
    Matrix mplus = model_matrix(f.h, f.w1);
    Matrix mminus = model_matrix(f.h, f.w2);
    double total = 0.0;
    for (size_t k = 0; k < aplus.a.size(); ++k) {
        double av = aplus.a[k];
        if (av > 0.0) {
            if (mplus.a[k] <= 0.0) return -kInf;
            total += av * std::log(mplus.a[k]);
        }
    }
    for (size_t k = 0; k < aminus.a.size(); ++k) {
        double av = aminus.a[k];
        if (av > 0.0) {
            if (mminus.a[k] <= 0.0) return -kInf;
            total += av * std::log(mminus.a[k]);
        }
    }
    return total;
}

double data_constant(const Matrix& a) {
    double total = 0.0;
    for (double v : a.a)
        if (v > 0.0) total += v * std::log(v) - v;
    return total;
}

} // namespace blockfactor
