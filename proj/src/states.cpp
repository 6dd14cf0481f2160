#include "gie/states.hpp"

#include <cmath>

#include "gie/kernels.hpp"
#include "gie/linalg.hpp"

namespace gie {

CompositeSpace::CompositeSpace(std::vector<int> d, int max_dim) : dims(std::move(d)) {
    if (dims.empty()) throw std::invalid_argument("CompositeSpace: no subsystems");
    long long total = 1;
    for (int v : dims) {
        if (v < 2) throw std::invalid_argument("CompositeSpace: subsystem dimension must be >= 2");
        total *= v;
        if (total > max_dim)
            throw std::invalid_argument("CompositeSpace: total dimension exceeds cap of " +
                                        std::to_string(max_dim));
    }
}

int CompositeSpace::total_dim() const {
    int t = 1;
    for (int v : dims) t *= v;
    return t;
}

CompositeSpace qubits(int n) { return CompositeSpace(std::vector<int>(n, 2)); }

PureState::PureState(CompositeSpace s, CVec a) : space(std::move(s)), amps(std::move(a)) {
    if (static_cast<int>(amps.size()) != space.total_dim())
        throw std::invalid_argument("PureState: amplitude count does not match space");
    if (std::abs(vec_norm(amps) - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: not normalized");
}

PureState PureState::basis(const CompositeSpace& s, int index) {
    if (index < 0 || index >= s.total_dim()) throw std::out_of_range("PureState::basis: index");
    CVec a(s.total_dim(), 0.0);
    a[index] = 1.0;
    return PureState(s, std::move(a));
}

PureState PureState::normalized(CompositeSpace s, CVec a) {
    const double n = vec_norm(a);
    if (n < 1e-300) throw std::invalid_argument("PureState::normalized: zero vector");
    for (auto& c : a) c /= n;
    return PureState(std::move(s), std::move(a));
}

DensityMatrix PureState::to_density() const {
    return DensityMatrix(space, outer(amps, amps), false);
}

DensityMatrix::DensityMatrix(CompositeSpace s, CMat m, bool check_psd)
    : space(std::move(s)), mat(std::move(m)) {
    const int d = space.total_dim();
    if (mat.rows != d || mat.cols != d)
        throw std::invalid_argument("DensityMatrix: matrix does not match space");
    if (!is_hermitian(mat, 1e-12)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(trace(mat) - Cx(1.0)) > 1e-12)
        throw std::invalid_argument("DensityMatrix: trace != 1");
    if (check_psd && min_eigenvalue() < -1e-10)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (const auto& v : mat.a) s += std::norm(v);
    return s;
}

double DensityMatrix::min_eigenvalue() const { return eigvals_hermitian(mat).front(); }

namespace {
CompositeSpace joined(const CompositeSpace& x, const CompositeSpace& y) {
    std::vector<int> dims = x.dims;
    dims.insert(dims.end(), y.dims.begin(), y.dims.end());
    return CompositeSpace(std::move(dims));
}
}  // namespace

PureState tensor(const PureState& x, const PureState& y) {
    return PureState(joined(x.space, y.space), kron_vec(x.amps, y.amps));
}

DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y) {
    return DensityMatrix(joined(x.space, y.space), kron(x.mat, y.mat), false);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be non-empty");
    CMat reduced = partial_trace_raw(rho.mat, rho.space.dims, keep);
    std::vector<int> dims;
    for (int s : keep) dims.push_back(rho.space.dims[s]);
    return DensityMatrix(CompositeSpace(std::move(dims)), std::move(reduced), false);
}

CMat partial_transpose(const DensityMatrix& rho, int subsystem) {
    return partial_transpose_raw(rho.mat, rho.space.dims, subsystem);
}

CMat partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystems) {
    CMat m = rho.mat;
    for (int s : subsystems) m = partial_transpose_raw(m, rho.space.dims, s);
    return m;
}

}  // namespace gie
