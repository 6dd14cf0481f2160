#pragma once

#include "gie/matrix.hpp"

namespace gie {

// Hermitian eigendecomposition (Eigen-backed). Values ascending; columns of
// `vectors` are the corresponding eigenvectors.
struct EigH {
    std::vector<double> values;
    CMat vectors;
};

std::vector<double> eigvals_hermitian(const CMat& m);
EigH eig_hermitian(const CMat& m);

// Hermitian PSD square root; eigenvalues below zero (numerical noise) clamp to 0.
CMat sqrt_psd(const CMat& m);

// exp(A) by scaling-and-squaring with a Taylor core; accurate to machine
// precision on the small dense matrices used here.
CMat expm(const CMat& a);

}  // namespace gie
