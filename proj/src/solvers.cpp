#include "blockfactor/solvers.hpp"
#include "blockfactor/kernels.hpp"
#include "blockfactor/rng.hpp"
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blockfactor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Work {
    Matrix gw, rg, numg, deng, x, smallw;
    std::vector<double> me, coef, s;
    Work(int n, int c)
        : gw(n, c), rg(n, c), numg(n, c), deng(n, c), x(c, c), smallw(c, c), s(c) {}
};

// Scalar data terms reused across iterations: sum a, sum a log a, sum a^2.
struct DataTerms {
    double suma = 0.0, aloga = 0.0, sumaa = 0.0;
};

DataTerms data_terms(const Csr& a) {
    DataTerms t;
    for (double v : a.val) {
        t.suma += v;
        t.sumaa += v * v;
        if (v > 0.0) t.aloga += v * std::log(v);
    }
    return t;
}

void edge_ratio(const Csr& a, const std::vector<double>& me, double eps, std::vector<double>& coef) {
    coef.resize(me.size());
    for (size_t e = 0; e < me.size(); ++e) {
        double m = me[e];
        coef[e] = a.val[e] / (m > eps ? m : eps);
    }
}

// One Algorithm 1 iteration without the trailing normalization: the
// multiplicative G and W scalings commute with it only up to a limit cycle,
// while the raw updates descend monotonically (fit() normalizes once at the
// end; labels are scale-invariant).
void kl_iterate(const Csr& a, Matrix& g, Matrix& w, double eps, Work& wk) {
    const int c = g.cols;
    nc_cc(g, w, wk.gw);
    edge_model(a, wk.gw, g, wk.me);
    edge_ratio(a, wk.me, eps, wk.coef);
    scatter_rows(a, wk.coef, g, wk.rg);
    nc_cc(wk.rg, w, wk.numg);
    wk.s = colsums(g);
    std::vector<double> den(c, 0.0);
    for (int r = 0; r < c; ++r) {
        double acc = 0.0;
        for (int t = 0; t < c; ++t) acc += w(r, t) * wk.s[t];
        den[r] = acc > eps ? acc : eps;
    }
    for (int i = 0; i < g.rows; ++i) {
        double* gi = g.row(i);
        const double* ni = wk.numg.row(i);
        for (int r = 0; r < c; ++r) gi[r] *= ni[r] / den[r];
    }

    nc_cc(g, w, wk.gw);
    edge_model(a, wk.gw, g, wk.me);
    edge_ratio(a, wk.me, eps, wk.coef);
    scatter_rows(a, wk.coef, g, wk.rg);
    ctc(g, wk.rg, wk.smallw);
    wk.s = colsums(g);
    for (int r = 0; r < c; ++r)
        for (int t = 0; t < c; ++t) {
            double d = wk.s[r] * wk.s[t];
            w(r, t) *= wk.smallw(r, t) / (d > eps ? d : eps);
        }
}

void lse_iterate(const Csr& a, Matrix& g, Matrix& w, double eps, Work& wk) {
    scatter_rows(a, a.val, g, wk.rg);      // A G
    nc_cc(wk.rg, w, wk.numg);
    ctc(g, g, wk.x);
    Matrix wxw = cc_mul(w, cc_mul(wk.x, w));
    nc_cc(g, wxw, wk.deng);
    mul_ratio(g, wk.numg, wk.deng, eps);

    scatter_rows(a, a.val, g, wk.rg);
    ctc(g, wk.rg, wk.smallw);              // G^T A G
    ctc(g, g, wk.x);
    Matrix xwx = cc_mul(cc_mul(wk.x, w), wk.x);
    for (int r = 0; r < w.rows; ++r)
        for (int t = 0; t < w.cols; ++t) {
            double d = xwx(r, t);
            w(r, t) *= wk.smallw(r, t) / (d > eps ? d : eps);
        }
}

double kl_objective_sparse(const Csr& a, const DataTerms& dt, const Matrix& g, const Matrix& w,
                           Work& wk) {
    nc_cc(g, w, wk.gw);
    edge_model(a, wk.gw, g, wk.me);
    double cross = 0.0;
    for (size_t e = 0; e < wk.me.size(); ++e) {
        if (a.val[e] > 0.0) {
            if (wk.me[e] <= 0.0) return kInf;
            cross += a.val[e] * std::log(wk.me[e]);
        }
    }
    wk.s = colsums(g);
    return dt.aloga - cross + quad_form(wk.s, w) - dt.suma;
}

double lse_objective_sparse(const Csr& a, const DataTerms& dt, const Matrix& g, const Matrix& w,
                            Work& wk) {
    nc_cc(g, w, wk.gw);
    edge_model(a, wk.gw, g, wk.me);
    double cross = dot_edges(a.val, wk.me);
    ctc(g, g, wk.x);
    Matrix xw = cc_mul(wk.x, w);
    double norm_m = 0.0;
    for (int r = 0; r < xw.rows; ++r)
        for (int t = 0; t < xw.cols; ++t) norm_m += xw(r, t) * xw(t, r);
    return dt.sumaa - 2.0 * cross + norm_m;
}

void validate_input(const Matrix& a) {
    if (a.rows != a.cols) throw std::domain_error("fit: adjacency must be square");
    for (double v : a.a)
        if (v < 0.0 || std::isnan(v)) throw std::domain_error("fit: adjacency must be nonnegative");
}

} // namespace

Factors init_factors(int n, int c, uint64_t seed) {
    if (n < 1 || c < 1) throw std::domain_error("init_factors: n and c must be positive");
    Rng rng(seed);
    Factors f;
    f.g = Matrix(n, c);
    for (int i = 0; i < n; ++i) {
        double* gi = f.g.row(i);
        double sum = 0.0;
        for (int r = 0; r < c; ++r) {
            gi[r] = rng.uniform01();
            sum += gi[r];
        }
        if (sum <= 0.0) {
            for (int r = 0; r < c; ++r) gi[r] = 1.0 / c;
        } else {
            for (int r = 0; r < c; ++r) gi[r] /= sum;
        }
    }
    f.w = Matrix(c, c, 0.05);
    for (int r = 0; r < c; ++r) f.w(r, r) = 0.45;
    return f;
}

Factors mu_step_kl(const Matrix& a, const Factors& f, double epsilon) {
    Csr csr = build_csr(a);
    Factors out = f;
    Work wk(a.rows, f.g.cols);
    kl_iterate(csr, out.g, out.w, epsilon, wk);
    return out;
}

Factors mu_step_lse(const Matrix& a, const Factors& f, double epsilon) {
    Csr csr = build_csr(a);
    Factors out = f;
    Work wk(a.rows, f.g.cols);
    lse_iterate(csr, out.g, out.w, epsilon, wk);
    return out;
}

FitResult fit(const Matrix& a, const SolverConfig& cfg) {
    validate_input(a);
    if (cfg.iterations < 1) throw std::domain_error("fit: iterations must be >= 1");
    if (cfg.communities < 1) throw std::domain_error("fit: communities must be >= 1");
    if (cfg.restarts < 1) throw std::domain_error("fit: restarts must be >= 1");

    const int n = a.rows, c = cfg.communities;
    Csr csr = build_csr(a);
    DataTerms dt = data_terms(csr);
    Work wk(n, c);

    FitResult best;
    double best_obj = kInf;
    bool have_best = false;
    for (int rs = 0; rs < cfg.restarts; ++rs) {
        Factors f = init_factors(n, c, mix_seed(cfg.seed, rs));
        std::vector<double> trace;
        trace.reserve(cfg.iterations);
        for (int t = 0; t < cfg.iterations; ++t) {
            if (cfg.algorithm == Algorithm::kl) {
                kl_iterate(csr, f.g, f.w, cfg.epsilon, wk);
                trace.push_back(kl_objective_sparse(csr, dt, f.g, f.w, wk));
            } else {
                lse_iterate(csr, f.g, f.w, cfg.epsilon, wk);
                trace.push_back(lse_objective_sparse(csr, dt, f.g, f.w, wk));
            }
            if (cfg.min_rel_change > 0.0 && t >= 1) {
                double prev = trace[t - 1];
                double scale = std::abs(prev) > 1.0 ? std::abs(prev) : 1.0;
                if (std::abs(trace[t] - prev) <= cfg.min_rel_change * scale) break;
            }
        }
        double final_obj = trace.back();
        if (!have_best || final_obj < best_obj) {
            have_best = true;
            best_obj = final_obj;
            best.factors = std::move(f);
            best.trace = std::move(trace);
            best.best_restart = rs;
        }
    }

    for (int i = 0; i < n; ++i) {
        double* gi = best.factors.g.row(i);
        double sum = 0.0;
        for (int r = 0; r < c; ++r) sum += gi[r];
        if (sum > 0.0)
            for (int r = 0; r < c; ++r) gi[r] /= sum;
    }
    best.labels = discretize(best.factors.g);
    return best;
}

std::vector<int> discretize(const Matrix& g) {
    std::vector<int> labels(g.rows, 0);
    for (int i = 0; i < g.rows; ++i) {
        const double* gi = g.row(i);
        int arg = 0;
        for (int r = 1; r < g.cols; ++r)
            if (gi[r] > gi[arg]) arg = r;
        labels[i] = arg;
    }
    return labels;
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "kl") return Algorithm::kl;
    if (name == "lse") return Algorithm::lse;
    throw std::domain_error("unknown algorithm: " + name);
}

} // namespace blockfactor
