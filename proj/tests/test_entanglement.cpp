#include <cmath>

#include "doctest.h"
#include "gie/entanglement.hpp"
#include "gie/kernels.hpp"
#include "gie/rng.hpp"
#include "testutil.hpp"

using namespace gie;
using testutil::check_close;
using testutil::two_qubit;

namespace {

// rho = p |Phi+><Phi+| + (1-p) I/4
DensityMatrix werner(double p) {
    const DensityMatrix bell = two_qubit(1, 0, 0, 1).to_density();
    CMat m = bell.mat;
    for (auto& v : m.a) v *= p;
    for (int i = 0; i < 4; ++i) m(i, i) += (1.0 - p) / 4.0;
    return DensityMatrix(qubits(2), std::move(m));
}

const BipartitionSpec kQubitSplit{qubits(2), {0}};

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("pure-state concurrence is 2|ad - bc|") {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        CVec a(4);
        for (auto& v : a) v = rng.complex_normal();
        const PureState psi = PureState::normalized(qubits(2), a);
        const double closed = 2.0 * std::abs(psi.amps[0] * psi.amps[3] - psi.amps[1] * psi.amps[2]);
        check_close(concurrence(psi), closed, 1e-12);
        // the density route takes sqrt of eigenvalues, so eigensolve residual
        // ~1e-16 surfaces as ~1e-8 — its precision floor, not a logic error
        check_close(concurrence(psi.to_density()), closed, 1e-7);
    }
}

TEST_CASE("Bell states are maximally entangled by every measure") {
    for (const PureState& bell : bell_states()) {
        const DensityMatrix rho = bell.to_density();
        check_close(concurrence(rho), 1.0, 1e-12);
        check_close(negativity(rho, kQubitSplit), 0.5, 1e-12);
        CHECK_FALSE(is_ppt(rho, kQubitSplit));
        check_close(linear_entropy(partial_trace(rho, {0})), 0.5, 1e-12);
    }
}

TEST_CASE("product states are separable by every measure") {
    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix rho =
            tensor(random_density(qubits(1), rng), random_density(qubits(1), rng));
        CHECK(concurrence(rho) < 1e-10);
        CHECK(negativity(rho, kQubitSplit) < 1e-12);
        CHECK(is_ppt(rho, kQubitSplit));
        CHECK(best_projective_witness(rho) > -1e-10);
    }
}

TEST_CASE("Werner family reproduces the closed-form negativity and PPT edge") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const DensityMatrix rho = werner(p);
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 4.0);
        check_close(negativity(rho, kQubitSplit), expected, 1e-12);
        CHECK(is_ppt(rho, kQubitSplit) == (p <= 1.0 / 3.0 + 1e-12));
        // concurrence of a Werner state: max(0, (3p-1)/2)
        check_close(concurrence(rho), std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-10);
    }
}

TEST_CASE("negativity is invariant under local unitaries") {
    Rng rng(19);
    const DensityMatrix rho = random_density(qubits(2), rng);
    const double base = negativity(rho, kQubitSplit);
    for (int t = 0; t < 5; ++t) {
        const CMat u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
        const DensityMatrix rotated(qubits(2), conjugate_with(u, rho.mat), false);
        check_close(negativity(rotated, kQubitSplit), base, 1e-11);
    }
}

TEST_CASE("PPT and vanishing concurrence coincide for two qubits") {
    Rng rng(23);
    int entangled = 0;
    for (int t = 0; t < 500; ++t) {
        const DensityMatrix rho = random_density(qubits(2), rng);
        const bool ppt = is_ppt(rho, kQubitSplit);
        const double c = concurrence(rho);
        if (ppt)
            CHECK(c < 1e-7);
        else  // concurrence dominates negativity for two qubits
            CHECK(c > negativity(rho, kQubitSplit) - 1e-12);
        if (!ppt) ++entangled;
    }
    // Ginibre sampling lands on both sides of the boundary
    CHECK(entangled > 50);
    CHECK(entangled < 450);
}

TEST_CASE("witness expectation is -1/2 on its target and >= 0 on products") {
    const PureState phi_plus = bell_states()[0];
    check_close(witness_expectation(phi_plus.to_density(), phi_plus), -0.5, 1e-12);

    Rng rng(29);
    for (int t = 0; t < 25; ++t) {
        const DensityMatrix prod =
            tensor(random_density(qubits(1), rng), random_density(qubits(1), rng));
        CHECK(witness_expectation(prod, phi_plus) > -1e-12);
    }
}

TEST_CASE("witness targets must be maximally entangled") {
    const DensityMatrix any = two_qubit(1, 0, 0, 1).to_density();
    CHECK_THROWS_AS(witness_expectation(any, two_qubit(1, 0, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(witness_expectation(any, two_qubit(0.9, 0, 0, 0.3)), std::invalid_argument);
}

TEST_CASE("projective witness search finds the protocol extremal states") {
    // (|00> + |01> + |10> - |11>)/2 is maximally entangled but not a Bell state
    const DensityMatrix rho = two_qubit(1, 1, 1, -1).to_density();
    check_close(best_projective_witness(rho), -0.5, 1e-12);
    // and the imaginary-cross state from the same family
    const PureState psi = PureState::normalized(
        qubits(2), {Cx(1, 0), Cx(0, 1), Cx(0, 1), Cx(1, 0)});
    check_close(best_projective_witness(psi.to_density()), -0.5, 1e-12);
    // Bell states themselves are in the family
    check_close(best_projective_witness(bell_states()[3].to_density()), -0.5, 1e-12);
}

TEST_CASE("bipartition bookkeeping") {
    const BipartitionSpec split(CompositeSpace({2, 3, 4}), {1});
    CHECK(split.side_b() == std::vector<int>{0, 2});
    CHECK_THROWS_AS(BipartitionSpec(qubits(2), {}), std::invalid_argument);
    CHECK_THROWS_AS(BipartitionSpec(qubits(2), {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(BipartitionSpec(qubits(2), {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BipartitionSpec(qubits(2), {2}), std::out_of_range);
}

TEST_CASE("linear entropy spans pure to maximally mixed") {
    check_close(linear_entropy(two_qubit(1, 0, 0, 1).to_density()), 0.0, 1e-13);
    CMat mixed = CMat::identity(4);
    for (auto& v : mixed.a) v *= 0.25;
    check_close(linear_entropy(DensityMatrix(qubits(2), mixed)), 0.75, 1e-14);
}

TEST_CASE("negativity works across unequal splits") {
    // |0>|0>|0> + |1>|1>|1> on {2,2,2}: every single-subsystem cut has negativity 1/2
    CVec ghz(8, 0.0);
    ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = PureState(qubits(3), ghz).to_density();
    for (int s = 0; s < 3; ++s)
        check_close(negativity(rho, BipartitionSpec(qubits(3), {s})), 0.5, 1e-12);
}

}  // TEST_SUITE
