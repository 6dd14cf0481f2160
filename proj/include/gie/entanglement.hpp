#pragma once

#include <array>

#include "gie/states.hpp"

namespace gie {

// A bipartition of a composite space: side_a lists subsystem indices
// (strictly increasing, non-empty, proper subset); side_b is the complement.
struct BipartitionSpec {
    CompositeSpace space;
    std::vector<int> side_a;

    BipartitionSpec(CompositeSpace s, std::vector<int> a);
    std::vector<int> side_b() const;
};

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const DensityMatrix& rho);
double concurrence(const PureState& psi);

// Sum of |negative eigenvalues| of the partial transpose across the split.
double negativity(const DensityMatrix& rho, const BipartitionSpec& split);

bool is_ppt(const DensityMatrix& rho, const BipartitionSpec& split, double tol = 1e-10);

// 1 - tr(rho^2)
double linear_entropy(const DensityMatrix& rho);

// tr(W rho) with W = I/2 - |target><target|; target must be a maximally
// entangled two-qubit pure state (marginals I/2 within 1e-10).
double witness_expectation(const DensityMatrix& rho, const PureState& target);

// canonical Bell basis: (|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2,
// (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2
std::array<PureState, 4> bell_states();

// Most negative witness value over a fixed family of maximally entangled
// targets (the four Bell states plus the phase-protocol extremal states);
// negative values certify entanglement, non-negative values are inconclusive.
double best_projective_witness(const DensityMatrix& rho);

}  // namespace gie
