#pragma once
#include "matrix.hpp"
#include <cstdint>
#include <vector>

namespace blockfactor {

// Compressed sparse rows over the nonzero entries of a dense matrix.
// Symmetric inputs store both (i,j) and (j,i); diagonals appear once.
struct Csr {
    int n = 0;
    std::vector<int> ptr;     // size n+1
    std::vector<int> idx;     // column of each stored entry
    std::vector<double> val;  // value of each stored entry
    int nnz() const { return static_cast<int>(idx.size()); }
};

Csr build_csr(const Matrix& a);

// Every kernel exists twice: serial_* is the reference, omp_* parallelizes
// over disjoint output slots with the same per-slot accumulation order, so
// the two produce bitwise identical results (the build disables fp
// contraction and reassociation). The unprefixed wrappers dispatch on
// kernels_parallel().

// out = G * W, (n x c)(c x c). Parallel over rows of out.
void serial_nc_cc(const Matrix& g, const Matrix& w, Matrix& out);
void omp_nc_cc(const Matrix& g, const Matrix& w, Matrix& out);
void nc_cc(const Matrix& g, const Matrix& w, Matrix& out);

// out = A^T * B for n x c inputs, giving c x c. Parallel over output cells.
void serial_ctc(const Matrix& a, const Matrix& b, Matrix& out);
void omp_ctc(const Matrix& a, const Matrix& b, Matrix& out);
void ctc(const Matrix& a, const Matrix& b, Matrix& out);

// out_e = dot(P(i,:), G(j,:)) for each stored entry e=(i,j): the model value
// M_ij = (G W G^T)_ij restricted to edges, with P = G*W. Parallel over rows.
void serial_edge_model(const Csr& a, const Matrix& p, const Matrix& g, std::vector<double>& out);
void omp_edge_model(const Csr& a, const Matrix& p, const Matrix& g, std::vector<double>& out);
void edge_model(const Csr& a, const Matrix& p, const Matrix& g, std::vector<double>& out);

// out(i,:) = sum over stored (i,j) of coef_e * G(j,:): computes R*G where R
// shares A's sparsity pattern and carries coef as values. Parallel over rows.
void serial_scatter_rows(const Csr& a, const std::vector<double>& coef, const Matrix& g, Matrix& out);
void omp_scatter_rows(const Csr& a, const std::vector<double>& coef, const Matrix& g, Matrix& out);
void scatter_rows(const Csr& a, const std::vector<double>& coef, const Matrix& g, Matrix& out);

// u = u * num / max(den, eps), elementwise over equal-shape matrices.
void serial_mul_ratio(Matrix& u, const Matrix& num, const Matrix& den, double eps);
void omp_mul_ratio(Matrix& u, const Matrix& num, const Matrix& den, double eps);
void mul_ratio(Matrix& u, const Matrix& num, const Matrix& den, double eps);

// Small serial helpers (c x c work or single reductions).
std::vector<double> colsums(const Matrix& g);
Matrix cc_mul(const Matrix& x, const Matrix& y);           // (c x c)(c x c)
double dot_edges(const std::vector<double>& x, const std::vector<double>& y);
double quad_form(const std::vector<double>& s, const Matrix& w); // s^T W s

// Per-process parallel toggle. The sweep pool turns kernel parallelism off
// inside its workers; single fits leave it on. Results do not depend on it.
bool kernels_parallel();
void set_kernels_parallel(bool on);

// Worker count honoring BLOCKFACTOR_THREADS (>=1).
int thread_budget();

} // namespace blockfactor
