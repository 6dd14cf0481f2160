#pragma once

#include <cstdint>

#include "gie/matrix.hpp"

// Dense kernels on composite-index matrices. Each production kernel is
// OpenMP-parallel over output elements with the per-element reduction kept in
// a fixed serial order, so results are bitwise identical for every thread
// count. gie::ref holds the plain serial references the tests and the
// benchmark compare against.

namespace gie {

CMat matmul(const CMat& x, const CMat& y);
CVec matvec(const CMat& m, const CVec& v);
CMat kron(const CMat& x, const CMat& y);
CVec kron_vec(const CVec& x, const CVec& y);

// U rho U^dagger
CMat conjugate_with(const CMat& u, const CMat& rho);

// Trace out all subsystems not listed in keep (dims = subsystem dimensions,
// subsystem 0 slowest-varying; keep is strictly increasing).
CMat partial_trace_raw(const CMat& rho, const std::vector<int>& dims,
                       const std::vector<int>& keep);

// Transpose the indices of one subsystem.
CMat partial_transpose_raw(const CMat& rho, const std::vector<int>& dims, int subsystem);

// Multiply element (i,j) by exp(-gamma*(n_i - n_j)^2 / 2) where n is the
// level index of `subsystem` in the composite index.
CMat dephase_raw(const CMat& rho, const std::vector<int>& dims, int subsystem, double gamma);

namespace ref {
CMat matmul(const CMat& x, const CMat& y);
CVec matvec(const CMat& m, const CVec& v);
CMat kron(const CMat& x, const CMat& y);
CMat partial_trace_raw(const CMat& rho, const std::vector<int>& dims,
                       const std::vector<int>& keep);
CMat partial_transpose_raw(const CMat& rho, const std::vector<int>& dims, int subsystem);
CMat dephase_raw(const CMat& rho, const std::vector<int>& dims, int subsystem, double gamma);
}  // namespace ref

}  // namespace gie
