#pragma once

#include <array>
#include <vector>

#include "gie/fock.hpp"
#include "gie/protocol.hpp"
#include "gie/states.hpp"

namespace gie {

// Branch couplings xi_{ab} >= 0, index order (00, 01, 10, 11): the mediation
// cycle D(-sqrt(xi)) exp(i w n) D(sqrt(xi)) imprints phase xi*sin(w) on each
// two-mass branch |ab>.
struct CouplingMatrix {
    std::array<double, 4> xi{};

    explicit CouplingMatrix(std::array<double, 4> x);
    double max_xi() const;
};

// Inversion of the imprinted phase at fixed modulation w: xi = phi / w
// (signed; the cycle itself needs xi >= 0, so a negative result means the
// caller should flip the sign of w).
struct XiFromPhase {
    double xi = 0.0;
    bool negative = false;
};

XiFromPhase xi_from_phase(double phi, double w);
CouplingMatrix couplings_from_phases(const std::array<double, 4>& phases, double w);

// coarse single-branch mass-field entanglement magnitude, 1 - exp(-xi)
double mass_field_entanglement_estimate(double xi);

struct PlanckRatioPhase {
    double ratio = 0.0;             // (m / planck_mass)^2 using the tabulated constant
    double phi_ratio_route = 0.0;   // (m/m_P)^2 * c * dt / d with m_P derived from hbar, c, G
    double phi_newton_route = 0.0;  // m^2 G dt / (hbar d)
};

PlanckRatioPhase planck_ratio_phase(double mass, double distance, double duration,
                                    const PhysicalConstants& k = {});

struct DephasingSpec {
    double gamma = 0.0;  // number-basis dephasing strength, >= 0

    explicit DephasingSpec(double g);
};

// Pure mediation cycle, branch-resolved (analytic coherent tracking plus
// truncated materialization; no dense field operators, so large xi is cheap).
struct MediatorRun {
    CouplingMatrix xis;
    double w = 0.0;
    double alpha0 = 0.0;
    int fock_levels = 0;
    // joint {2,2,N} states: initial, displaced, phase-modulated, returned
    std::vector<PureState> stage_states;
    DensityMatrix mass_mass_state;  // two-mass marginal after the cycle
    double concurrence_final = 0.0;
    double negativity_final = 0.0;
    double witness_final = 0.0;
    double field_return_fidelity = 0.0;   // <alpha0| rho_field |alpha0> after the cycle
    double mass_field_entropy_mid = 0.0;  // linear entropy of the two-mass marginal mid-cycle
};

MediatorRun field_cycle(const CouplingMatrix& xis, double w, const FockSpace& fock,
                        double alpha0 = 0.0);

// Truncation that keeps every stage of the cycle below tail_tol.
int recommended_cycle_levels(const CouplingMatrix& xis, double w, double alpha0 = 0.0,
                             double tail_tol = 1e-12, int min_levels = 16);

// Same cycle with number-basis dephasing of strength gamma applied to the
// field after the displacement stage and after the phase stage (dense route:
// keep fock.levels modest).
struct DephasedCycleResult {
    double gamma = 0.0;
    DensityMatrix mass_mass_state;
    double concurrence = 0.0;
    double negativity = 0.0;
    double witness_value = 0.0;
    double field_return_fidelity = 0.0;
};

DephasedCycleResult dephased_field_cycle(const CouplingMatrix& xis, double w,
                                         const FockSpace& fock, const DephasingSpec& dephasing,
                                         double alpha0 = 0.0);

// Bracket of the dephasing strength at which the final mass-mass negativity
// falls to tol: negativity(gamma_lo) > tol >= negativity(gamma_hi), with
// gamma_hi/gamma_lo <= 1 + 1e-4.
struct ThresholdBracket {
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;
    int evaluations = 0;
};

ThresholdBracket entanglement_breaking_threshold(const CouplingMatrix& xis, double w,
                                                 const FockSpace& fock, double tol = 1e-6);

}  // namespace gie
