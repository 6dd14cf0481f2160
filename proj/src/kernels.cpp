#include "gie/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace gie {

namespace {

void check_mul(const CMat& x, const CMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul: inner dimension mismatch");
}

int total_dim(const std::vector<int>& dims) {
    int d = 1;
    for (int v : dims) {
        if (v < 1) throw std::invalid_argument("composite dims must be >= 1");
        d *= v;
    }
    return d;
}

// stride of subsystem s (subsystem 0 slowest-varying)
int stride_of(const std::vector<int>& dims, int s) {
    int st = 1;
    for (size_t k = s + 1; k < dims.size(); ++k) st *= dims[k];
    return st;
}

void check_square(const CMat& rho, const std::vector<int>& dims) {
    int d = total_dim(dims);
    if (rho.rows != d || rho.cols != d)
        throw std::invalid_argument("composite kernel: matrix does not match dims");
}

// Flattened composite offsets of every multi-index over the chosen subsystems.
std::vector<int> subset_offsets(const std::vector<int>& dims, const std::vector<int>& subs) {
    std::vector<int> offs{0};
    for (int s : subs) {
        int st = stride_of(dims, s);
        std::vector<int> next;
        next.reserve(offs.size() * dims[s]);
        for (int base : offs)
            for (int v = 0; v < dims[s]; ++v) next.push_back(base + v * st);
        offs = std::move(next);
    }
    return offs;
}

void check_subsystem(const std::vector<int>& dims, int s) {
    if (s < 0 || s >= static_cast<int>(dims.size()))
        throw std::out_of_range("subsystem index out of range");
}

}  // namespace

CMat matmul(const CMat& x, const CMat& y) {
    check_mul(x, y);
    CMat r(x.rows, y.cols);
    const int n = x.rows, k = x.cols, m = y.cols;
#pragma omp parallel for schedule(static) if (n > 8)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Cx s = 0.0;
            for (int p = 0; p < k; ++p) s += x(i, p) * y(p, j);
            r(i, j) = s;
        }
    return r;
}

CVec matvec(const CMat& m, const CVec& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw std::invalid_argument("matvec: dimension mismatch");
    CVec r(m.rows);
#pragma omp parallel for schedule(static) if (m.rows > 64)
    for (int i = 0; i < m.rows; ++i) {
        Cx s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

CMat kron(const CMat& x, const CMat& y) {
    CMat r(x.rows * y.rows, x.cols * y.cols);
    const int n = r.rows;
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) {
        const int xi = i / y.rows, yi = i % y.rows;
        for (int xj = 0; xj < x.cols; ++xj) {
            const Cx xv = x(xi, xj);
            for (int yj = 0; yj < y.cols; ++yj) r(i, xj * y.cols + yj) = xv * y(yi, yj);
        }
    }
    return r;
}

CVec kron_vec(const CVec& x, const CVec& y) {
    CVec r(x.size() * y.size());
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) r[i * y.size() + j] = x[i] * y[j];
    return r;
}

CMat conjugate_with(const CMat& u, const CMat& rho) {
    return matmul(matmul(u, rho), adjoint(u));
}

CMat partial_trace_raw(const CMat& rho, const std::vector<int>& dims,
                       const std::vector<int>& keep) {
    check_square(rho, dims);
    for (size_t k = 0; k < keep.size(); ++k) {
        check_subsystem(dims, keep[k]);
        if (k > 0 && keep[k] <= keep[k - 1])
            throw std::invalid_argument("partial_trace: keep list must be strictly increasing");
    }
    std::vector<int> traced;
    for (int s = 0; s < static_cast<int>(dims.size()); ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

    const auto koff = subset_offsets(dims, keep);
    const auto toff = subset_offsets(dims, traced);
    const int dk = static_cast<int>(koff.size());
    CMat r(dk, dk);
#pragma omp parallel for schedule(static) if (dk > 8)
    for (int p = 0; p < dk; ++p)
        for (int q = 0; q < dk; ++q) {
            Cx s = 0.0;
            for (int t : toff) s += rho(koff[p] + t, koff[q] + t);
            r(p, q) = s;
        }
    return r;
}

CMat partial_transpose_raw(const CMat& rho, const std::vector<int>& dims, int subsystem) {
    check_square(rho, dims);
    check_subsystem(dims, subsystem);
    const int st = stride_of(dims, subsystem);
    const int d = dims[subsystem];
    const int n = rho.rows;
    CMat r(n, n);
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) {
        const int ni = (i / st) % d;
        for (int j = 0; j < n; ++j) {
            const int nj = (j / st) % d;
            r(i + (nj - ni) * st, j + (ni - nj) * st) = rho(i, j);
        }
    }
    return r;
}

CMat dephase_raw(const CMat& rho, const std::vector<int>& dims, int subsystem, double gamma) {
    check_square(rho, dims);
    check_subsystem(dims, subsystem);
    if (gamma < 0.0) throw std::invalid_argument("dephase: gamma must be >= 0");
    const int st = stride_of(dims, subsystem);
    const int d = dims[subsystem];
    const int n = rho.rows;
    CMat r(n, n);
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) {
        const int ni = (i / st) % d;
        for (int j = 0; j < n; ++j) {
            const int nj = (j / st) % d;
            const double dn = static_cast<double>(ni - nj);
            r(i, j) = rho(i, j) * std::exp(-0.5 * gamma * dn * dn);
        }
    }
    return r;
}

namespace ref {

CMat matmul(const CMat& x, const CMat& y) {
    check_mul(x, y);
    CMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            Cx s = 0.0;
            for (int p = 0; p < x.cols; ++p) s += x(i, p) * y(p, j);
            r(i, j) = s;
        }
    return r;
}

CVec matvec(const CMat& m, const CVec& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw std::invalid_argument("matvec: dimension mismatch");
    CVec r(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        Cx s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

CMat kron(const CMat& x, const CMat& y) {
    CMat r(x.rows * y.rows, x.cols * y.cols);
    for (int xi = 0; xi < x.rows; ++xi)
        for (int yi = 0; yi < y.rows; ++yi)
            for (int xj = 0; xj < x.cols; ++xj)
                for (int yj = 0; yj < y.cols; ++yj)
                    r(xi * y.rows + yi, xj * y.cols + yj) = x(xi, xj) * y(yi, yj);
    return r;
}

CMat partial_trace_raw(const CMat& rho, const std::vector<int>& dims,
                       const std::vector<int>& keep) {
    check_square(rho, dims);
    std::vector<int> traced;
    for (int s = 0; s < static_cast<int>(dims.size()); ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);
    const auto koff = subset_offsets(dims, keep);
    const auto toff = subset_offsets(dims, traced);
    const int dk = static_cast<int>(koff.size());
    CMat r(dk, dk);
    for (int p = 0; p < dk; ++p)
        for (int q = 0; q < dk; ++q) {
            Cx s = 0.0;
            for (int t : toff) s += rho(koff[p] + t, koff[q] + t);
            r(p, q) = s;
        }
    return r;
}

CMat partial_transpose_raw(const CMat& rho, const std::vector<int>& dims, int subsystem) {
    check_square(rho, dims);
    check_subsystem(dims, subsystem);
    const int st = stride_of(dims, subsystem);
    const int d = dims[subsystem];
    CMat r(rho.rows, rho.cols);
    for (int i = 0; i < rho.rows; ++i) {
        const int ni = (i / st) % d;
        for (int j = 0; j < rho.cols; ++j) {
            const int nj = (j / st) % d;
            r(i + (nj - ni) * st, j + (ni - nj) * st) = rho(i, j);
        }
    }
    return r;
}

CMat dephase_raw(const CMat& rho, const std::vector<int>& dims, int subsystem, double gamma) {
    check_square(rho, dims);
    check_subsystem(dims, subsystem);
    const int st = stride_of(dims, subsystem);
    const int d = dims[subsystem];
    CMat r(rho.rows, rho.cols);
    for (int i = 0; i < rho.rows; ++i) {
        const int ni = (i / st) % d;
        for (int j = 0; j < rho.cols; ++j) {
            const int nj = (j / st) % d;
            const double dn = static_cast<double>(ni - nj);
            r(i, j) = rho(i, j) * std::exp(-0.5 * gamma * dn * dn);
        }
    }
    return r;
}

}  // namespace ref

}  // namespace gie
