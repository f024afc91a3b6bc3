#include "blockfactor/kernels.hpp"
#include <atomic>
#include <cstdlib>
#include <thread>

#ifdef BLOCKFACTOR_HAVE_OPENMP
#include <omp.h>
#endif

namespace blockfactor {

namespace {
std::atomic<bool> g_parallel{true};
}

bool kernels_parallel() {
#ifdef BLOCKFACTOR_HAVE_OPENMP
    return g_parallel.load(std::memory_order_relaxed);
#else
    return false;
#endif
}

void set_kernels_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("BLOCKFACTOR_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v < hw ? v : hw;
    }
    return hw;
}

Csr build_csr(const Matrix& a) {
    Csr c;
    c.n = a.rows;
    c.ptr.assign(a.rows + 1, 0);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (a(i, j) != 0.0) ++c.ptr[i + 1];
    for (int i = 0; i < a.rows; ++i) c.ptr[i + 1] += c.ptr[i];
    c.idx.resize(c.ptr[a.rows]);
    c.val.resize(c.ptr[a.rows]);
    std::vector<int> at(c.ptr.begin(), c.ptr.end() - 1);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (a(i, j) != 0.0) {
                c.idx[at[i]] = j;
                c.val[at[i]] = a(i, j);
                ++at[i];
            }
    return c;
}

// ---- G * W ----

static inline void nc_cc_row(const Matrix& g, const Matrix& w, Matrix& out, int i) {
    const int c = w.rows;
    const double* gi = g.row(i);
    double* oi = out.row(i);
    for (int s = 0; s < c; ++s) {
        double acc = 0.0;
        for (int r = 0; r < c; ++r) acc += gi[r] * w(r, s);
        oi[s] = acc;
    }
}

void serial_nc_cc(const Matrix& g, const Matrix& w, Matrix& out) {
    for (int i = 0; i < g.rows; ++i) nc_cc_row(g, w, out, i);
}

void omp_nc_cc(const Matrix& g, const Matrix& w, Matrix& out) {
#ifdef BLOCKFACTOR_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < g.rows; ++i) nc_cc_row(g, w, out, i);
}

void nc_cc(const Matrix& g, const Matrix& w, Matrix& out) {
    kernels_parallel() ? omp_nc_cc(g, w, out) : serial_nc_cc(g, w, out);
}

// ---- A^T * B ----

static inline double ctc_cell(const Matrix& a, const Matrix& b, int r, int s) {
    double acc = 0.0;
    for (int i = 0; i < a.rows; ++i) acc += a(i, r) * b(i, s);
    return acc;
}

void serial_ctc(const Matrix& a, const Matrix& b, Matrix& out) {
    const int c = a.cols, d = b.cols;
    for (int r = 0; r < c; ++r)
        for (int s = 0; s < d; ++s) out(r, s) = ctc_cell(a, b, r, s);
}

void omp_ctc(const Matrix& a, const Matrix& b, Matrix& out) {
    const int c = a.cols, d = b.cols;
#ifdef BLOCKFACTOR_HAVE_OPENMP
#pragma omp parallel for schedule(static) collapse(2)
#endif
    for (int r = 0; r < c; ++r)
        for (int s = 0; s < d; ++s) out(r, s) = ctc_cell(a, b, r, s);
}

void ctc(const Matrix& a, const Matrix& b, Matrix& out) {
    kernels_parallel() ? omp_ctc(a, b, out) : serial_ctc(a, b, out);
}

// ---- model values on edges ----

static inline void edge_model_row(const Csr& a, const Matrix& p, const Matrix& g,
                                  std::vector<double>& out, int i) {
    const int c = p.cols;
    const double* pi = p.row(i);
    for (int e = a.ptr[i]; e < a.ptr[i + 1]; ++e) {
        const double* gj = g.row(a.idx[e]);
        double acc = 0.0;
        for (int r = 0; r < c; ++r) acc += pi[r] * gj[r];
        out[e] = acc;
    }
}

void serial_edge_model(const Csr& a, const Matrix& p, const Matrix& g, std::vector<double>& out) {
    out.resize(a.idx.size());
    for (int i = 0; i < a.n; ++i) edge_model_row(a, p, g, out, i);
}

void omp_edge_model(const Csr& a, const Matrix& p, const Matrix& g, std::vector<double>& out) {
    out.resize(a.idx.size());
#ifdef BLOCKFACTOR_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < a.n; ++i) edge_model_row(a, p, g, out, i);
}

void edge_model(const Csr& a, const Matrix& p, const Matrix& g, std::vector<double>& out) {
    kernels_parallel() ? omp_edge_model(a, p, g, out) : serial_edge_model(a, p, g, out);
}

// ---- R * G with R = pattern(A) carrying coef ----

static inline void scatter_row(const Csr& a, const std::vector<double>& coef, const Matrix& g,
                               Matrix& out, int i) {
    const int c = g.cols;
    double* oi = out.row(i);
    for (int r = 0; r < c; ++r) oi[r] = 0.0;
    for (int e = a.ptr[i]; e < a.ptr[i + 1]; ++e) {
        const double* gj = g.row(a.idx[e]);
        const double w = coef[e];
        for (int r = 0; r < c; ++r) oi[r] += w * gj[r];
    }
}

void serial_scatter_rows(const Csr& a, const std::vector<double>& coef, const Matrix& g, Matrix& out) {
    for (int i = 0; i < a.n; ++i) scatter_row(a, coef, g, out, i);
}

void omp_scatter_rows(const Csr& a, const std::vector<double>& coef, const Matrix& g, Matrix& out) {
#ifdef BLOCKFACTOR_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < a.n; ++i) scatter_row(a, coef, g, out, i);
}

void scatter_rows(const Csr& a, const std::vector<double>& coef, const Matrix& g, Matrix& out) {
    kernels_parallel() ? omp_scatter_rows(a, coef, g, out) : serial_scatter_rows(a, coef, g, out);
}

// ---- multiplicative update ----

void serial_mul_ratio(Matrix& u, const Matrix& num, const Matrix& den, double eps) {
    const size_t total = u.a.size();
    for (size_t k = 0; k < total; ++k) {
        double d = den.a[k];
        u.a[k] *= num.a[k] / (d > eps ? d : eps);
    }
}

void omp_mul_ratio(Matrix& u, const Matrix& num, const Matrix& den, double eps) {
    const long long total = static_cast<long long>(u.a.size());
#ifdef BLOCKFACTOR_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long k = 0; k < total; ++k) {
        double d = den.a[k];
        u.a[k] *= num.a[k] / (d > eps ? d : eps);
    }
}

void mul_ratio(Matrix& u, const Matrix& num, const Matrix& den, double eps) {
    kernels_parallel() ? omp_mul_ratio(u, num, den, eps) : serial_mul_ratio(u, num, den, eps);
}

// ---- small serial pieces ----

std::vector<double> colsums(const Matrix& g) {
    std::vector<double> s(g.cols, 0.0);
    for (int i = 0; i < g.rows; ++i) {
        const double* gi = g.row(i);
        for (int r = 0; r < g.cols; ++r) s[r] += gi[r];
    }
    return s;
}

Matrix cc_mul(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            double acc = 0.0;
            for (int k = 0; k < x.cols; ++k) acc += x(i, k) * y(k, j);
            out(i, j) = acc;
        }
    return out;
}

double dot_edges(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (size_t e = 0; e < x.size(); ++e) acc += x[e] * y[e];
    return acc;
}

double quad_form(const std::vector<double>& s, const Matrix& w) {
    double acc = 0.0;
    for (int r = 0; r < w.rows; ++r) {
        double inner = 0.0;
        for (int t = 0; t < w.cols; ++t) inner += w(r, t) * s[t];
        acc += s[r] * inner;
    }
    return acc;
}

} // namespace blockfactor
