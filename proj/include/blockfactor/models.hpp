#pragma once
#include "matrix.hpp"
#include <vector>

namespace blockfactor {

// Factor pair of the symmetric models: M = G W G^T with G n x c, W c x c,
// everything nonnegative.
struct Factors {
    Matrix g, w;
};

// Degree-corrected variant: M = (theta theta^T) o (G W G^T), with theta
// normalized so sum_i theta_i G_ir = 1 per community.
struct DCFactors {
    std::vector<double> theta;
    Matrix g, w;
};

// Directed tri-factorization M = F W H^T; columns of F and H each sum to 1
// over nodes and the entries of W sum to 1.
struct DirectedFactors {
    Matrix f, h, w;
};

// Signed pair model: Mplus = H W1 H^T, Mminus = H W2 H^T with W1 diagonal,
// W2 zero-diagonal, columns of H summing to 1, total W1+W2 mass 1.
struct SignedFactors {
    Matrix h, w1, w2;
};

// Binary c x c mask; entry 1 marks community pairs allowed to connect.
struct TypeMask {
    Matrix t;
};

// Hard-partition sufficient statistics: community sizes and block edge mass
// m_rs = sum_{i,j} A_ij [g_i = r][g_j = s] (so m_rr is twice the internal
// edge count).
struct BlockStats {
    std::vector<int> labels;
    std::vector<int> sizes;
    Matrix edge_counts;
};

// Generalized KL divergence sum_ij [a log(a/m) + m - a] with 0 log 0 = 0;
// returns +infinity when some a > 0 sits on m = 0.
double kl_objective(const Matrix& a, const Factors& f);

// Squared Frobenius distance sum_ij (a - m)^2.
double lse_objective(const Matrix& a, const Factors& f);

double dc_objective(const Matrix& a, const DCFactors& f);
double bipartite_objective(const Matrix& a, const Factors& f, const TypeMask& t);
double directed_objective(const Matrix& a, const DirectedFactors& f);
double signed_objective(const Matrix& aplus, const Matrix& aminus, const SignedFactors& f);

BlockStats block_stats(const Matrix& a, const std::vector<int>& labels);

// Pointwise maximizer w_rs = m_rs / (n_r n_s), zero where a community is empty.
Matrix mle_block_params(const BlockStats& stats);

// sum_rs (m_rs log w_rs - n_r n_s w_rs); -infinity when m_rs > 0 meets w_rs = 0.
double sbm_loglik(const Matrix& a, const std::vector<int>& labels, const Matrix& w);

// sum_ij a_ij log(theta_i theta_j) + sum_rs (m_rs log w_rs - w_rs), valid for
// theta normalized within communities.
double dcsbm_loglik(const Matrix& a, const std::vector<double>& theta,
                    const std::vector<int>& labels, const Matrix& w);

// Companion likelihood pieces used by the equivalence suites.

// Poisson block log-likelihood restricted to mask-allowed pairs:
// sum_{rs: t_rs=1} (m_rs log w_rs - n_r n_s w_rs).
double bipartite_loglik(const Matrix& a, const std::vector<int>& labels, const Matrix& w,
                        const TypeMask& t);

// Gaussian log-likelihood with blockwise means w_{g_i g_j} and fixed sigma:
// -n^2 log(sqrt(2 pi) sigma) - sum_ij (a_ij - w_{g_i g_j})^2 / (2 sigma^2).
double normal_loglik(const Matrix& a, const std::vector<int>& labels, const Matrix& w,
                     double sigma);

// sum_ij a_ij log (F W H^T)_ij.
double directed_logmass(const Matrix& a, const DirectedFactors& f);

// sum_ij aplus_ij log(H W1 H^T)_ij + sum_ij aminus_ij log(H W2 H^T)_ij.
double signed_logmass(const Matrix& aplus, const Matrix& aminus, const SignedFactors& f);

// sum_ij (a_ij log a_ij - a_ij): the data-only constant the equivalences
// telescope to.
double data_constant(const Matrix& a);

} // namespace blockfactor
