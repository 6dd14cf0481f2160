#pragma once

#include "gie/matrix.hpp"

namespace gie {

// Composite-dimension guard. Pure-state work on big truncated bosonic spaces
// may raise the cap explicitly; density-matrix paths stay at the default.
inline constexpr int kDefaultMaxDim = 4096;

// Ordered subsystem dimensions; subsystem 0 is the slowest-varying composite
// index (basis |i0 i1 ... ik> flattens to ((i0*d1 + i1)*d2 + ...)).
struct CompositeSpace {
    std::vector<int> dims;

    CompositeSpace() = default;
    explicit CompositeSpace(std::vector<int> d, int max_dim = kDefaultMaxDim);

    int total_dim() const;
    int subsystems() const { return static_cast<int>(dims.size()); }
    bool operator==(const CompositeSpace& o) const { return dims == o.dims; }
};

CompositeSpace qubits(int n);

struct DensityMatrix;

struct PureState {
    CompositeSpace space;
    CVec amps;

    // validates size and unit norm (1e-12)
    PureState(CompositeSpace s, CVec a);
    static PureState basis(const CompositeSpace& s, int index);
    // rescales to unit norm (zero vector rejected)
    static PureState normalized(CompositeSpace s, CVec a);

    DensityMatrix to_density() const;
};

struct DensityMatrix {
    CompositeSpace space;
    CMat mat;

    // validates shape, Hermiticity and unit trace (1e-12); check_psd adds an
    // eigenvalue floor check at -1e-10
    DensityMatrix(CompositeSpace s, CMat m, bool check_psd = true);

    double purity() const;       // tr(rho^2)
    double min_eigenvalue() const;
};

PureState tensor(const PureState& x, const PureState& y);
DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y);

// keep: strictly increasing subsystem indices to retain (non-empty; full set = copy)
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Transposed-subsystem matrix; generally not PSD, so it is returned as a bare
// Hermitian matrix rather than a DensityMatrix.
CMat partial_transpose(const DensityMatrix& rho, int subsystem);
CMat partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystems);

}  // namespace gie
