#include "doctest.h"
#include "blockfactor/metrics.hpp"
#include "blockfactor/rng.hpp"
#include <stdexcept>
#include <vector>

using namespace blockfactor;

TEST_CASE("confusion table fixtures") {
    Confusion diag = confusion_counts({0, 1, 2}, {0, 1, 2});
    CHECK(diag.n == 3);
    CHECK(diag.k == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(diag.counts(i, j) == (i == j ? 1.0 : 0.0));

    Confusion uniform = confusion_counts({0, 0, 1, 1}, {0, 1, 0, 1});
    for (double v : uniform.counts.a) CHECK(v == 1.0);

    Confusion skew = confusion_counts({0, 0, 1, 1}, {0, 0, 1, 0});
    CHECK(skew.counts(0, 0) == 2.0);
    CHECK(skew.counts(0, 1) == 0.0);
    CHECK(skew.counts(1, 0) == 1.0);
    CHECK(skew.counts(1, 1) == 1.0);
    CHECK(skew.row_sizes == std::vector<double>{2.0, 2.0});
    CHECK(skew.col_sizes == std::vector<double>{3.0, 1.0});

    CHECK_THROWS_AS(confusion_counts({0, 1}, {0}), std::domain_error);
}

TEST_CASE("confusion relabels sparse ids densely and pads to the larger side") {
    Confusion c = confusion_counts({5, 5, 9, 9}, {2, 2, 2, 7});
    CHECK(c.k == 2);
    CHECK(c.counts(0, 0) == 2.0);
    CHECK(c.counts(1, 0) == 1.0);
    CHECK(c.counts(1, 1) == 1.0);

    Confusion padded = confusion_counts({0, 1, 2}, {0, 0, 0});
    CHECK(padded.k == 3);
    CHECK(padded.col_sizes == std::vector<double>{3.0, 0.0, 0.0});
}

TEST_CASE("nmi fixtures") {
    CHECK(nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
    double v = nmi({0, 0, 1, 1}, {0, 0, 1, 0});
    CHECK(v == doctest::Approx(0.3455920299442113).epsilon(1e-12));
    CHECK(v == doctest::Approx(0.34559).epsilon(1e-4));
}

TEST_CASE("nmi is symmetric and relabel invariant") {
    std::vector<int> a{0, 0, 1, 1, 2, 2, 0, 1};
    std::vector<int> b{0, 1, 1, 2, 2, 0, 0, 2};
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)).epsilon(1e-12));

    std::vector<int> relabeled(b.size());
    int map[3] = {2, 0, 1};
    for (size_t i = 0; i < b.size(); ++i) relabeled[i] = map[b[i]];
    CHECK(nmi(a, relabeled) == doctest::Approx(nmi(a, b)).epsilon(1e-12));
}

TEST_CASE("nmi stays within range and hits one only on matching partitions") {
    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        int n = 4 + static_cast<int>(rng.below(12));
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.below(3));
            b[i] = static_cast<int>(rng.below(3));
        }
        double v = nmi(a, b);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(nmi({1, 1, 0, 0, 2, 2}, {0, 0, 2, 2, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nmi({0, 0, 1, 1}, {0, 0, 1, 0}) < 1.0);
}

TEST_CASE("single-cluster conventions") {
    CHECK(nmi({0, 0, 0}, {0, 0, 0}) == 1.0);
    CHECK(nmi({0, 0, 0}, {1, 1, 1}) == 1.0);
    CHECK(nmi({0, 0, 0}, {0, 1, 2}) == 0.0);
    CHECK(nmi({0, 1, 2}, {0, 0, 0}) == 0.0);
    CHECK(nmi({0}, {0}) == 1.0);
}

TEST_CASE("nmi from a confusion table matches nmi from labels") {
    Rng rng(43);
    for (int t = 0; t < 20; ++t) {
        int n = 5 + static_cast<int>(rng.below(10));
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.below(4));
            b[i] = static_cast<int>(rng.below(2));
        }
        CHECK(nmi(a, b) == nmi(confusion_counts(a, b)));
    }
}
