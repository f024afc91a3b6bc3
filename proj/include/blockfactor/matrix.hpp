#pragma once
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace blockfactor {

// Dense row-major matrix of doubles. Small and boring on purpose: every
// numeric routine in the library works on this one type.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}
    Matrix(int r, int c, std::initializer_list<double> vals) : rows(r), cols(c), a(vals) {
        assert(static_cast<int>(a.size()) == r * c);
    }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    double* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
    const double* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }

    void fill(double v) { std::fill(a.begin(), a.end(), v); }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

inline Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

inline double max_abs_diff(const Matrix& x, const Matrix& y) {
    assert(x.same_shape(y));
    double d = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) {
        double e = x.a[i] - y.a[i];
        if (e < 0) e = -e;
        if (e > d) d = e;
    }
    return d;
}

} // namespace blockfactor
