#include "CLI11.hpp"
#include "blockfactor/kernels.hpp"
#include "blockfactor/rng.hpp"
#include "blockfactor/solvers.hpp"
#include <chrono>
#include <cstdio>
#include <vector>

using namespace blockfactor;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix random_matrix(Rng& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (double& v : m.a) v = rng.uniform01();
    return m;
}

// Sparse symmetric test matrix with roughly `per_row` nonzeros per row.
Matrix random_sparse(Rng& rng, int n, int per_row) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < per_row / 2; ++k) {
            int j = static_cast<int>(rng.below(n));
            double v = 1.0 + rng.uniform01();
            a(i, j) += v;
            a(j, i) += v;
        }
    return a;
}

template <typename F>
double time_best(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        double dt = seconds_since(t0);
        if (dt < best) best = dt;
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing comparison of the serial reference kernels against the OpenMP variants"};
    int n = 1000, c = 16, per_row = 40, reps = 5, iters = 20;
    app.add_option("--n", n, "Rows");
    app.add_option("--c", c, "Factor width");
    app.add_option("--edges-per-row", per_row, "Approximate stored entries per row");
    app.add_option("--reps", reps, "Repetitions per kernel (best time wins)");
    app.add_option("--fit-iters", iters, "Iterations for the whole-step comparison");
    CLI11_PARSE(app, argc, argv);

    Rng rng(7);
    Matrix a = random_sparse(rng, n, per_row);
    Csr csr = build_csr(a);
    Matrix g = random_matrix(rng, n, c);
    Matrix w = random_matrix(rng, c, c);

    std::printf("n=%d c=%d nnz=%d threads=%d openmp=%s\n", n, c, csr.nnz(), thread_budget(),
#ifdef BLOCKFACTOR_HAVE_OPENMP
                "yes"
#else
                "no"
#endif
    );

    Matrix out_s(n, c), out_p(n, c), cc_s(c, c), cc_p(c, c);
    std::vector<double> me_s, me_p;

    double t_s = time_best(reps, [&] { serial_nc_cc(g, w, out_s); });
    double t_p = time_best(reps, [&] { omp_nc_cc(g, w, out_p); });
    std::printf("%-14s serial %.4f ms   omp %.4f ms   speedup %.2fx   %s\n", "G*W", t_s * 1e3,
                t_p * 1e3, t_s / t_p, max_abs_diff(out_s, out_p) == 0.0 ? "bitwise equal" : "DIFFER");

    t_s = time_best(reps, [&] { serial_ctc(g, out_s, cc_s); });
    t_p = time_best(reps, [&] { omp_ctc(g, out_s, cc_p); });
    std::printf("%-14s serial %.4f ms   omp %.4f ms   speedup %.2fx   %s\n", "G^T*B", t_s * 1e3,
                t_p * 1e3, t_s / t_p, max_abs_diff(cc_s, cc_p) == 0.0 ? "bitwise equal" : "DIFFER");

    serial_nc_cc(g, w, out_s);
    t_s = time_best(reps, [&] { serial_edge_model(csr, out_s, g, me_s); });
    t_p = time_best(reps, [&] { omp_edge_model(csr, out_s, g, me_p); });
    bool same = me_s == me_p;
    std::printf("%-14s serial %.4f ms   omp %.4f ms   speedup %.2fx   %s\n", "edge model",
                t_s * 1e3, t_p * 1e3, t_s / t_p, same ? "bitwise equal" : "DIFFER");

    t_s = time_best(reps, [&] { serial_scatter_rows(csr, csr.val, g, out_s); });
    t_p = time_best(reps, [&] { omp_scatter_rows(csr, csr.val, g, out_p); });
    std::printf("%-14s serial %.4f ms   omp %.4f ms   speedup %.2fx   %s\n", "scatter rows",
                t_s * 1e3, t_p * 1e3, t_s / t_p,
                max_abs_diff(out_s, out_p) == 0.0 ? "bitwise equal" : "DIFFER");

    // Whole solver iterations, serial reference vs parallel kernels.
    SolverConfig cfg;
    cfg.iterations = iters;
    cfg.seed = 11;
    cfg.communities = c;
    cfg.restarts = 1;
    for (Algorithm alg : {Algorithm::kl, Algorithm::lse}) {
        cfg.algorithm = alg;
        set_kernels_parallel(false);
        auto t0 = std::chrono::steady_clock::now();
        FitResult serial_fit = fit(a, cfg);
        double fit_s = seconds_since(t0);
        set_kernels_parallel(true);
        t0 = std::chrono::steady_clock::now();
        FitResult parallel_fit = fit(a, cfg);
        double fit_p = seconds_since(t0);
        bool identical = serial_fit.trace == parallel_fit.trace;
        std::printf("%-14s serial %.1f ms   omp %.1f ms   speedup %.2fx   traces %s\n",
                    alg == Algorithm::kl ? "fit kl" : "fit lse", fit_s * 1e3, fit_p * 1e3,
                    fit_s / fit_p, identical ? "bitwise equal" : "DIFFER");
    }
    return 0;
}
