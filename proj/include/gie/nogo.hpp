#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gie/rng.hpp"
#include "gie/states.hpp"

namespace gie {

// Operations a classical mediator C can take part in. Each op acts on one
// mass qubit together with C (or on C alone) and must commute with complete
// dephasing of C in its classical basis — the defining property of a
// classical carrier: it transports populations, never coherences.
enum class ClassicalOpKind {
    controlled_unitary,   // sum_c U_c (x) |c><c|
    measure_and_permute,  // projective qubit measurement steering a C permutation
    local_unitary,        // qubit unitary, C untouched
    stochastic_map,       // classical channel on C alone
    general_kraus,        // unconstrained CPTP block (covariance checked, not enforced)
};

struct ClassicalOp {
    ClassicalOpKind kind;
    int q_target;  // 0 or 1; -1 when the op acts on C alone
    int d_c;
    bool covariant;  // passed the dephasing-covariance check at construction
    // Kraus operators on the acting subspace, ordered (qubit, C) row-major
    // (dimension 2*d_c), or C alone (dimension d_c) for stochastic_map.
    std::vector<CMat> kraus;

    static ClassicalOp controlled_unitary(int target, const std::vector<CMat>& u_per_c);
    static ClassicalOp measure_and_permute(int target, const CMat& basis,
                                           const std::array<std::vector<int>, 2>& perms);
    static ClassicalOp local_unitary(int target, const CMat& u2, int d_c);
    static ClassicalOp stochastic_map(const std::vector<std::vector<double>>& row_stochastic);
    // CPTP enforced, covariance merely recorded — the escape hatch a quantum
    // mediator needs
    static ClassicalOp general_kraus(int target, int d_c, std::vector<CMat> ks);
};

struct ClassicalCircuit {
    int d_c;
    std::vector<ClassicalOp> ops;

    ClassicalCircuit(int dc, std::vector<ClassicalOp> o);
};

// Product initial state Q1 (x) Q2 (x) C on {2,2,d_c}.
DensityMatrix product_initial_state(const DensityMatrix& q1, const DensityMatrix& q2,
                                    const std::vector<double>& c_populations);

// Run a circuit whose every op is covariant, from a product initial state
// whose C marginal is classical (diagonal); throws otherwise. Returns the
// final joint state on {2,2,d_c}.
DensityMatrix apply_classical_circuit(const ClassicalCircuit& circuit,
                                      const DensityMatrix& initial);

// Same propagation without the classicality gate (any CPTP ops, any initial).
DensityMatrix apply_circuit_unchecked(const ClassicalCircuit& circuit,
                                      const DensityMatrix& initial);

struct TrialRecord {
    uint64_t seed = 0;
    int depth = 0;
    int d_c = 0;
    double negativity = 0.0;
    double witness_min = 0.0;  // most negative canonical Bell witness value
    bool ppt = true;
};

struct NoGoReport {
    uint64_t master_seed = 0;
    int trials = 0;
    double max_negativity = 0.0;
    double max_witness_violation = 0.0;  // max over trials of (-witness_min), floored at 0
    int failures = 0;                    // trials showing entanglement beyond tolerance
    std::vector<TrialRecord> records;
};

ClassicalCircuit random_classical_circuit(int depth, int d_c, Rng& rng);
ClassicalCircuit random_classical_circuit(int depth, int d_c, uint64_t seed);

// Randomized check that no classically mediated circuit entangles the masses:
// every trial draws a fresh circuit and product initial state, runs it, and
// records the mass-mass negativity / witness / PPT status. fixed_dc = 0 cycles
// the mediator dimension through 2, 3, 4; 2..4 pins it.
NoGoReport verify_no_go(int trials, int max_depth, uint64_t master_seed, int fixed_dc = 0);

// The same interaction pattern with the mediator prepared in superposition
// and read out coherently produces a Bell pair — the contrast case.
struct CounterexampleReport {
    bool superposed_control = true;
    std::vector<bool> step_covariant;  // which steps passed the covariance check
    DensityMatrix final_mass_state;
    double negativity = 0.0;
    double concurrence = 0.0;
    double witness_min = 0.0;
};

CounterexampleReport quantum_mediator_counterexample(bool superposed_control = true);

}  // namespace gie
