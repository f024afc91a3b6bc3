#include "doctest.h"
#include "blockfactor/equivalence.hpp"
#include "blockfactor/models.hpp"
#include "blockfactor/rng.hpp"
#include <cmath>
#include <limits>
#include <stdexcept>

using namespace blockfactor;

namespace {

Matrix one_hot(const std::vector<int>& labels, int c) {
    Matrix g(static_cast<int>(labels.size()), c);
    for (size_t i = 0; i < labels.size(); ++i) g(static_cast<int>(i), labels[i]) = 1.0;
    return g;
}

Matrix random_matrix(Rng& rng, int rows, int cols, double lo = 0.05) {
    Matrix m(rows, cols);
    for (double& v : m.a) v = lo + rng.uniform01();
    return m;
}

Matrix model_of(const Factors& f) {
    int n = f.g.rows, c = f.g.cols;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int r = 0; r < c; ++r)
                for (int t = 0; t < c; ++t) s += f.g(i, r) * f.w(r, t) * f.g(j, t);
            m(i, j) = s;
        }
    return m;
}

} // namespace

TEST_CASE("kl objective vanishes on exact factorizations") {
    Matrix a(2, 2, {0.0, 2.0, 2.0, 0.0});
    Factors f{one_hot({0, 1}, 2), Matrix(2, 2, {0.0, 2.0, 2.0, 0.0})};
    CHECK(kl_objective(a, f) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kl objective hand value on the one-hot all-ones case") {
    Matrix a(2, 2, {0.0, 1.0, 1.0, 0.0});
    Factors f{one_hot({0, 1}, 2), Matrix(2, 2, 1.0)};
    CHECK(kl_objective(a, f) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("kl objective on zero data is the model mass") {
    Matrix a(2, 2);
    Factors f{one_hot({0, 1}, 2), Matrix(2, 2, {1.0, 2.0, 3.0, 4.0})};
    CHECK(kl_objective(a, f) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("kl objective returns infinity when data sits on zero model mass") {
    Matrix a(1, 1, {1.0});
    Factors f{Matrix(1, 1, {1.0}), Matrix(1, 1, {0.0})};
    CHECK(std::isinf(kl_objective(a, f)));
    CHECK(kl_objective(a, f) > 0);
}

TEST_CASE("lse objective fixtures") {
    Rng rng(5);
    Factors f{random_matrix(rng, 4, 2), random_matrix(rng, 2, 2)};
    Matrix exact = model_of(f);
    CHECK(lse_objective(exact, f) == doctest::Approx(0.0).epsilon(1e-12));

    Matrix eye(2, 2, {1.0, 0.0, 0.0, 1.0});
    Factors zero_w{one_hot({0, 1}, 2), Matrix(2, 2)};
    CHECK(lse_objective(eye, zero_w) == doctest::Approx(2.0).epsilon(1e-12));

    Matrix two(1, 1, {2.0});
    Factors unit{Matrix(1, 1, {1.0}), Matrix(1, 1, {1.0})};
    CHECK(lse_objective(two, unit) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degree correction with unit weights matches the plain objective") {
    Rng rng(11);
    Matrix a = random_matrix(rng, 5, 5, 0.0);
    Factors f{random_matrix(rng, 5, 2), random_matrix(rng, 2, 2)};
    DCFactors dc{std::vector<double>(5, 1.0), f.g, f.w};
    CHECK(dc_objective(a, dc) == doctest::Approx(kl_objective(a, f)).epsilon(1e-12));

    Matrix a1(1, 1, {3.0});
    Factors f1{Matrix(1, 1, {1.0}), Matrix(1, 1, {2.0})};
    DCFactors dc1{std::vector<double>{1.0}, f1.g, f1.w};
    CHECK(dc_objective(a1, dc1) == doctest::Approx(kl_objective(a1, f1)).epsilon(1e-12));
}

TEST_CASE("degree-corrected objective on zero data is the weighted model mass") {
    DCFactors dc{std::vector<double>{2.0, 0.5}, one_hot({0, 1}, 2), Matrix(2, 2, 1.0)};
    Matrix a(2, 2);
    double mass = 2.0 * 2.0 + 2.0 * 0.5 + 0.5 * 2.0 + 0.5 * 0.5;
    CHECK(dc_objective(a, dc) == doctest::Approx(mass).epsilon(1e-12));
}

TEST_CASE("bipartite objective reduces to the plain one under a full mask") {
    Rng rng(13);
    Matrix a = random_matrix(rng, 4, 4, 0.0);
    Factors f{random_matrix(rng, 4, 2), random_matrix(rng, 2, 2)};
    TypeMask full{Matrix(2, 2, 1.0)};
    CHECK(bipartite_objective(a, f, full) == doctest::Approx(kl_objective(a, f)).epsilon(1e-12));

    TypeMask none{Matrix(2, 2)};
    CHECK(std::isinf(bipartite_objective(a, f, none)));

    TypeMask cross{Matrix(2, 2, {0.0, 1.0, 1.0, 0.0})};
    Factors g{one_hot({0, 0, 1, 1}, 2), Matrix(2, 2, {9.0, 1.5, 1.5, 9.0})};
    Matrix masked = model_of(Factors{g.g, Matrix(2, 2, {0.0, 1.5, 1.5, 0.0})});
    CHECK(bipartite_objective(masked, g, cross) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("directed objective hand value") {
    Matrix a(2, 2, {0.0, 1.0, 1.0, 0.0});
    Matrix fh(2, 1, {0.5, 0.5});
    DirectedFactors f{fh, fh, Matrix(1, 1, {1.0})};
    double expected = 2.0 * std::log(4.0) + 1.0 - 2.0;
    CHECK(directed_objective(a, f) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(directed_objective(a, f) == doctest::Approx(1.77259).epsilon(1e-5));
}

TEST_CASE("directed model mass is one under the simplex constraints") {
    Rng rng(17);
    int n = 6, c = 3;
    Matrix f = random_matrix(rng, n, c), h = random_matrix(rng, n, c), w = random_matrix(rng, c, c);
    for (int r = 0; r < c; ++r) {
        double sf = 0.0, sh = 0.0;
        for (int i = 0; i < n; ++i) { sf += f(i, r); sh += h(i, r); }
        for (int i = 0; i < n; ++i) { f(i, r) /= sf; h(i, r) /= sh; }
    }
    double sw = 0.0;
    for (double v : w.a) sw += v;
    for (double& v : w.a) v /= sw;
    DirectedFactors df{f, h, w};
    Matrix zero(n, n);
    CHECK(directed_objective(zero, df) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("signed objective splits into two generalized KL terms") {
    Rng rng(19);
    int n = 5, c = 2;
    Matrix h = random_matrix(rng, n, c);
    Matrix w1(c, c), w2(c, c);
    w1(0, 0) = 0.3; w1(1, 1) = 0.2;
    w2(0, 1) = 0.25; w2(1, 0) = 0.25;
    Matrix aplus = random_matrix(rng, n, n, 0.0), zero(n, n);

    SignedFactors f{h, w1, Matrix(c, c)};
    CHECK(signed_objective(aplus, zero, f) ==
          doctest::Approx(kl_objective(aplus, Factors{h, w1})).epsilon(1e-12));

    for (int r = 0; r < c; ++r) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += h(i, r);
        for (int i = 0; i < n; ++i) h(i, r) /= s;
    }
    SignedFactors norm{h, w1, w2};
    CHECK(signed_objective(zero, zero, norm) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("block stats match the direct double sum") {
    Matrix a(2, 2, {0.0, 1.0, 1.0, 0.0});
    BlockStats merged = block_stats(a, {0, 0});
    CHECK(merged.sizes == std::vector<int>{2});
    CHECK(merged.edge_counts(0, 0) == 2.0);

    BlockStats split = block_stats(a, {0, 1});
    CHECK(split.sizes == std::vector<int>{1, 1});
    CHECK(split.edge_counts(0, 1) == 1.0);
    CHECK(split.edge_counts(1, 0) == 1.0);
    CHECK(split.edge_counts(0, 0) == 0.0);

    Matrix empty(3, 3);
    BlockStats es = block_stats(empty, {0, 1, 0});
    for (double v : es.edge_counts.a) CHECK(v == 0.0);

    CHECK_THROWS_AS(block_stats(a, {0}), std::domain_error);
}

TEST_CASE("mle block params maximize the profile pointwise") {
    Matrix a(2, 2, {0.0, 1.0, 1.0, 0.0});
    BlockStats st = block_stats(a, {0, 0});
    Matrix w = mle_block_params(st);
    CHECK(w(0, 0) == doctest::Approx(0.5).epsilon(1e-12));

    BlockStats split = block_stats(a, {0, 1});
    Matrix ws = mle_block_params(split);
    CHECK(ws(0, 0) == 0.0);
    CHECK(ws(0, 1) == doctest::Approx(ws(1, 0)).epsilon(1e-15));

    double best = sbm_loglik(a, split.labels, ws);
    Rng rng(23);
    for (int k = 0; k < 20; ++k) {
        Matrix other = ws;
        for (double& v : other.a) v = std::max(1e-6, v + 0.2 * (rng.uniform01() - 0.5));
        CHECK(best >= sbm_loglik(a, split.labels, other) - 1e-12);
    }
}

TEST_CASE("block likelihood hand value") {
    Matrix a(2, 2, {0.0, 2.0, 2.0, 0.0});
    Matrix w(2, 2, {0.0, 1.0, 1.0, 0.0});
    CHECK(sbm_loglik(a, {0, 1}, w) == doctest::Approx(-2.0).epsilon(1e-12));

    Matrix zero(2, 2);
    CHECK(sbm_loglik(zero, {0, 1}, Matrix(2, 2)) == 0.0);

    CHECK(sbm_loglik(a, {0, 1}, Matrix(2, 2)) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("degree-corrected likelihood reduces to a shifted block likelihood") {
    Rng rng(29);
    int n = 8, c = 3;
    Matrix a = random_matrix(rng, n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) a(i, j) = a(j, i);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = (i < c) ? i : static_cast<int>(rng.below(c));
    Matrix w = random_matrix(rng, c, c);
    BlockStats st = block_stats(a, labels);

    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i) theta[i] = 1.0 / st.sizes[labels[i]];

    double shift = 0.0, extra = 0.0;
    for (int r = 0; r < c; ++r)
        for (int s = 0; s < c; ++s) {
            double nrns = double(st.sizes[r]) * st.sizes[s];
            shift += st.edge_counts(r, s) * std::log(nrns);
            extra += (nrns - 1.0) * w(r, s);
        }
    double expected = sbm_loglik(a, labels, w) - shift + extra;
    CHECK(dcsbm_loglik(a, theta, labels, w) == doctest::Approx(expected).epsilon(1e-9));

    Matrix zero(n, n);
    double wsum = 0.0;
    for (double v : w.a) wsum += v;
    CHECK(dcsbm_loglik(zero, theta, labels, w) == doctest::Approx(-wsum).epsilon(1e-12));

    Matrix doubled = a;
    for (double& v : doubled.a) v *= 2.0;
    CHECK(dcsbm_loglik(doubled, theta, labels, w) ==
          doctest::Approx(2.0 * dcsbm_loglik(a, theta, labels, w) + wsum).epsilon(1e-9));
}

TEST_CASE("objectives are invariant under community relabeling") {
    Rng rng(31);
    int n = 6, c = 3;
    Matrix a = random_matrix(rng, n, n, 0.0);
    Factors f{random_matrix(rng, n, c), random_matrix(rng, c, c)};

    std::vector<int> perm{2, 0, 1};
    Factors pf{Matrix(n, c), Matrix(c, c)};
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < c; ++r) pf.g(i, perm[r]) = f.g(i, r);
    for (int r = 0; r < c; ++r)
        for (int s = 0; s < c; ++s) pf.w(perm[r], perm[s]) = f.w(r, s);

    CHECK(kl_objective(a, pf) == doctest::Approx(kl_objective(a, f)).epsilon(1e-9));
    CHECK(lse_objective(a, pf) == doctest::Approx(lse_objective(a, f)).epsilon(1e-9));

    DirectedFactors df{f.g, pf.g, f.w};
    DirectedFactors pdf{pf.g, Matrix(n, c), pf.w};
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < c; ++r) pdf.h(i, perm[r]) = df.h(i, r);
    for (int r = 0; r < c; ++r)
        for (int s = 0; s < c; ++s) pdf.w(perm[r], perm[s]) = df.w(r, s);
    CHECK(directed_objective(a, pdf) == doctest::Approx(directed_objective(a, df)).epsilon(1e-9));
}

TEST_CASE("data constant hand value") {
    Matrix a(2, 2, {0.0, 2.0, 2.0, 0.0});
    CHECK(data_constant(a) == doctest::Approx(4.0 * std::log(2.0) - 4.0).epsilon(1e-12));
    Matrix zero(3, 3);
    CHECK(data_constant(zero) == 0.0);
}

TEST_CASE("gaussian likelihood companion telescopes against the squared error") {
    Matrix a(2, 2, {0.0, 2.0, 2.0, 0.0});
    std::vector<int> labels{0, 1};
    Matrix w(2, 2, {0.5, 1.0, 1.0, 0.5});
    Factors f{one_hot(labels, 2), w};
    double sigma = 1.0;
    double lhs = lse_objective(a, f) + 2.0 * sigma * sigma * normal_loglik(a, labels, w, sigma);
    double expected = -2.0 * sigma * sigma * 4.0 * std::log(std::sqrt(2.0 * 3.14159265358979323846) * sigma);
    CHECK(lhs == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("equivalence suites hold on random instances") {
    auto reports = run_equivalence_suites(7, 10, 5);
    REQUIRE(reports.size() == 6);
    const char* names[] = {"standard", "degree_corrected", "bipartite", "normal", "directed", "signed"};
    for (size_t k = 0; k < 6; ++k) {
        CAPTURE(reports[k].model);
        CHECK(reports[k].model == names[k]);
        CHECK(reports[k].instances == 10);
        CHECK(reports[k].draws == 5);
        CHECK(reports[k].max_deviation < 1e-9);
    }
    auto again = run_equivalence_suites(7, 10, 5);
    for (size_t k = 0; k < 6; ++k) CHECK(again[k].max_deviation == reports[k].max_deviation);
}
