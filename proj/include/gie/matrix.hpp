#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gie {

using Cx = std::complex<double>;

// Dense row-major complex matrix. Small composite Hilbert spaces only, so
// clarity beats blocking tricks; the hot loops live in kernels.hpp.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<Cx> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {
        if (r < 0 || c < 0) throw std::invalid_argument("CMat: negative dimension");
    }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Cx& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Cx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    Cx& at(int i, int j) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw std::out_of_range("CMat::at: index out of range");
        return (*this)(i, j);
    }

    bool same_shape(const CMat& o) const { return rows == o.rows && cols == o.cols; }
};

using CVec = std::vector<Cx>;

inline CMat adjoint(const CMat& m) {
    CMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline CMat transpose(const CMat& m) {
    CMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
    return r;
}

inline CMat operator+(const CMat& x, const CMat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("CMat+: shape mismatch");
    CMat r = x;
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] += y.a[k];
    return r;
}

inline CMat operator-(const CMat& x, const CMat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("CMat-: shape mismatch");
    CMat r = x;
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] -= y.a[k];
    return r;
}

inline CMat operator*(Cx s, const CMat& m) {
    CMat r = m;
    for (auto& v : r.a) v *= s;
    return r;
}

inline Cx trace(const CMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("trace: non-square");
    Cx t = 0.0;
    for (int i = 0; i < m.rows; ++i) t += m(i, i);
    return t;
}

// max_ij |x_ij - y_ij|
inline double max_abs_diff(const CMat& x, const CMat& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (size_t k = 0; k < x.a.size(); ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
    return m;
}

// induced 1-norm (max column sum); used to pick the expm scaling factor
inline double one_norm(const CMat& m) {
    double best = 0.0;
    for (int j = 0; j < m.cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < m.rows; ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

inline double frobenius_norm(const CMat& m) {
    double s = 0.0;
    for (const auto& v : m.a) s += std::norm(v);
    return std::sqrt(s);
}

inline bool is_hermitian(const CMat& m, double tol) {
    if (m.rows != m.cols) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i; j < m.cols; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

inline double vec_norm(const CVec& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

inline Cx inner(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: size mismatch");
    Cx s = 0.0;
    for (size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
    return s;
}

// |x><y|
inline CMat outer(const CVec& x, const CVec& y) {
    CMat r(static_cast<int>(x.size()), static_cast<int>(y.size()));
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j) r(i, j) = x[i] * std::conj(y[j]);
    return r;
}

}  // namespace gie
