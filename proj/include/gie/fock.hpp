#pragma once

#include <stdexcept>

#include "gie/states.hpp"

namespace gie {

// Raised when a truncated-Fock computation would push weight past the
// truncation edge; carries the offending tail weight.
struct truncation_error : std::runtime_error {
    double tail;
    truncation_error(const std::string& what, double tail_weight)
        : std::runtime_error(what), tail(tail_weight) {}
};

struct FockSpace {
    int levels;                    // truncation dimension N (states |0..N-1>)
    double tail_tolerance = 1e-12; // max coherent weight allowed above the edge

    explicit FockSpace(int n, double tail_tol = 1e-12) : levels(n), tail_tolerance(tail_tol) {
        if (n < 2) throw std::invalid_argument("FockSpace: need at least 2 levels");
        if (!(tail_tol > 0.0)) throw std::invalid_argument("FockSpace: tail tolerance must be > 0");
    }
};

// P(n >= levels) for a coherent state with |alpha|^2 = alpha_sq (Poisson tail).
double coherent_tail_weight(double alpha_sq, int levels);

// Smallest truncation (>= min_levels) whose coherent tail at alpha_max stays
// below tail_tol.
int recommended_levels(double alpha_max, double tail_tol = 1e-12, int min_levels = 16);

// Truncated coherent coefficients for a complex amplitude, renormalized on the
// truncated space. Underflowing entries become exact zeros.
CVec coherent_amplitudes(Cx alpha, int levels);

// |alpha> with real amplitude on the truncated space; throws truncation_error
// if the tail exceeds fock.tail_tolerance.
PureState coherent_state(double alpha, const FockSpace& fock);

// D(xi) = exp(sqrt(xi) (a^dag - a)), xi >= 0.
CMat displacement_operator(double xi, const FockSpace& fock);

// exp(i w n^hat), diagonal.
CMat number_phase_operator(double w, const FockSpace& fock);

// annihilation operator on the truncated space
CMat lowering_operator(int levels);

}  // namespace gie
