#include "gie/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gie/kernels.hpp"

namespace gie {

namespace {

Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
    return e;
}

void require_hermitian(const CMat& m) {
    if (!is_hermitian(m, 1e-8)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
}

}  // namespace

std::vector<double> eigvals_hermitian(const CMat& m) {
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
    std::vector<double> v(m.rows);
    for (int i = 0; i < m.rows; ++i) v[i] = es.eigenvalues()(i);
    return v;
}

EigH eig_hermitian(const CMat& m) {
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
    EigH r;
    r.values.resize(m.rows);
    r.vectors = CMat(m.rows, m.rows);
    for (int i = 0; i < m.rows; ++i) {
        r.values[i] = es.eigenvalues()(i);
        for (int j = 0; j < m.rows; ++j) r.vectors(i, j) = es.eigenvectors()(i, j);
    }
    return r;
}

CMat sqrt_psd(const CMat& m) {
    EigH e = eig_hermitian(m);
    const int n = m.rows;
    CMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Cx s = 0.0;
            for (int k = 0; k < n; ++k) {
                const double lam = std::max(0.0, e.values[k]);
                s += e.vectors(i, k) * std::sqrt(lam) * std::conj(e.vectors(j, k));
            }
            r(i, j) = s;
        }
    return r;
}

CMat expm(const CMat& a) {
    if (a.rows != a.cols) throw std::invalid_argument("expm: non-square");
    const int n = a.rows;
    const double nrm = one_norm(a);
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));

    CMat b = Cx(std::ldexp(1.0, -squarings)) * a;
    CMat result = CMat::identity(n);
    CMat term = CMat::identity(n);
    // ||b|| <= 0.5 so ~20 Taylor terms reach machine precision
    for (int k = 1; k <= 64; ++k) {
        term = Cx(1.0 / k) * matmul(term, b);
        result = result + term;
        if (one_norm(term) < 1e-17 * std::max(1.0, one_norm(result))) break;
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

}  // namespace gie
