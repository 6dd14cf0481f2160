#include <array>
#include <cmath>

#include "doctest.h"
#include "gie/entanglement.hpp"
#include "gie/fieldmodel.hpp"
#include "gie/fock.hpp"
#include "gie/kernels.hpp"
#include "testutil.hpp"

using namespace gie;
using testutil::check_close;
using testutil::check_mat_close;

namespace {

constexpr double kPi = 3.14159265358979323846;

CouplingMatrix symmetric_pattern(double w) {
    const double q = kPi / 2.0;
    return couplings_from_phases({0.0, q, q, 0.0}, w);
}

CouplingMatrix corner_pattern(double phi, double w) {
    return couplings_from_phases({0.0, 0.0, 0.0, phi}, w);
}

FockSpace cycle_space(const CouplingMatrix& xis, double w, double alpha0 = 0.0) {
    return FockSpace(recommended_cycle_levels(xis, w, alpha0));
}

}  // namespace

TEST_SUITE("fieldmodel") {

TEST_CASE("phase inversion is phi / w with a flip flag for negative results") {
    const XiFromPhase x = xi_from_phase(1.2, 1e-3);
    check_close(x.xi, 1200.0, 1e-9);
    CHECK_FALSE(x.negative);
    const XiFromPhase neg = xi_from_phase(-0.4, 0.1);
    check_close(neg.xi, -4.0, 1e-12);
    CHECK(neg.negative);
    CHECK_THROWS_AS(xi_from_phase(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("coupling matrices reject negative or non-finite entries") {
    CHECK_THROWS_AS(CouplingMatrix({0.0, -1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(couplings_from_phases({0.0, -0.5, 0.0, 0.0}, 1.0),
                         doctest::Contains("flip the sign of w"), std::invalid_argument);
    const CouplingMatrix ok({0.5, 0.0, 2.0, 1.0});
    check_close(ok.max_xi(), 2.0, 0.0);
}

TEST_CASE("single-branch entanglement estimate is 1 - exp(-xi)") {
    check_close(mass_field_entanglement_estimate(0.0), 0.0, 0.0);
    check_close(mass_field_entanglement_estimate(0.3), 1.0 - std::exp(-0.3), 1e-15);
    CHECK_THROWS_AS(mass_field_entanglement_estimate(-0.1), std::invalid_argument);
}

TEST_CASE("Planck-ratio route and Newton route give the same phase") {
    const double m = 1e-12, d = 1e-6, dt = 1e-6;
    const PlanckRatioPhase pr = planck_ratio_phase(m, d, dt);
    check_close(pr.phi_ratio_route, pr.phi_newton_route,
                1e-9 * std::abs(pr.phi_newton_route));
    check_close(pr.phi_newton_route, gravitational_phase(m, d, dt), 1e-18);
    // (1e-12 / 2.176434e-8)^2
    const PhysicalConstants k;
    check_close(pr.ratio, (m / k.planck_mass) * (m / k.planck_mass), 1e-24);
    CHECK(std::abs(pr.ratio - 2.11e-9) < 0.01 * 2.11e-9);
}

TEST_CASE("a zero-coupling cycle is a no-op") {
    const CouplingMatrix xis({0, 0, 0, 0});
    const MediatorRun run = field_cycle(xis, 0.3, FockSpace(16), 0.0);
    // concurrence of the (mixed-type) marginal goes through the eigensolve
    // route, whose sqrt amplifies residuals to ~1e-9 even on exact zeros
    check_close(run.concurrence_final, 0.0, 1e-8);
    check_close(run.negativity_final, 0.0, 1e-12);
    check_close(run.field_return_fidelity, 1.0, 1e-12);
    check_close(run.mass_field_entropy_mid, 0.0, 1e-12);
    CHECK(run.stage_states.size() == 4);
    for (const PureState& s : run.stage_states) {
        check_close(vec_norm(s.amps), 1.0, 1e-12);
        CHECK(s.space.dims == std::vector<int>{2, 2, 16});
    }
}

TEST_CASE("slow modulation transfers the phase pattern onto the masses") {
    const double w = 1e-3;
    const CouplingMatrix xis = symmetric_pattern(w);
    const MediatorRun run = field_cycle(xis, w, cycle_space(xis, w));
    CHECK(run.concurrence_final >= 0.995);
    CHECK(run.field_return_fidelity >= 0.995);
    CHECK(run.witness_final < -0.49);

    // the same pattern at w/10 quarters both residuals (xi*w scaling), easily 5x
    const double w2 = 1e-4;
    const CouplingMatrix xis2 = symmetric_pattern(w2);
    const MediatorRun run2 = field_cycle(xis2, w2, cycle_space(xis2, w2));
    const double c_err = 1.0 - run.concurrence_final, c_err2 = 1.0 - run2.concurrence_final;
    const double f_err = 1.0 - run.field_return_fidelity, f_err2 = 1.0 - run2.field_return_fidelity;
    CHECK(c_err2 * 5.0 <= c_err);
    CHECK(f_err2 * 5.0 <= f_err);
}

TEST_CASE("opposite-corner pattern with equal off-diagonals is a product state") {
    const double w = 1e-3;
    const CouplingMatrix xis = couplings_from_phases({0.0, kPi, kPi, 0.0}, w);
    const MediatorRun run = field_cycle(xis, w, cycle_space(xis, w));
    CHECK(run.concurrence_final < 1e-6);
    CHECK(run.negativity_final < 1e-6);
}

TEST_CASE("a single hot corner also entangles the masses") {
    const double w = 1e-3;
    const CouplingMatrix xis = corner_pattern(kPi, w);
    const MediatorRun run = field_cycle(xis, w, cycle_space(xis, w));
    CHECK(run.concurrence_final >= 0.995);
}

TEST_CASE("mid-cycle mass-field entropy matches the branch-overlap closed form") {
    // pattern (0,0,0,xi) at small xi: purity = 1 - (3/8)(1 - e^{-xi}) + O(...)
    const double w = 1.0, xi = 0.01;
    const CouplingMatrix xis = corner_pattern(xi * w, w);  // xi = phi / w
    const MediatorRun run = field_cycle(xis, w, FockSpace(32));
    const double expected = (3.0 / 8.0) * (1.0 - std::exp(-xi));
    check_close(run.mass_field_entropy_mid, expected, 1e-6);
    check_close(expected, 3.731e-3, 5e-7);  // magnitude check at xi = 0.01
}

TEST_CASE("coarse estimate doubles the exact two-branch linear entropy") {
    // (|0>|vac> + |1>|sqrt(xi)>)/sqrt2 has S_L = (1 - e^{-xi})/2
    const double xi = 0.37;
    const int n = recommended_levels(std::sqrt(xi));
    const CVec home = coherent_amplitudes(0.0, n);
    const CVec kicked = coherent_amplitudes(std::sqrt(xi), n);
    CVec joint(2 * n, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < n; ++k) {
        joint[k] = r * home[k];
        joint[n + k] = r * kicked[k];
    }
    const PureState psi(CompositeSpace({2, n}), joint);
    const DensityMatrix mass = partial_trace(psi.to_density(), {0});
    const double s = linear_entropy(mass);
    check_close(s, 0.5 * (1.0 - std::exp(-xi)), 1e-10);
    check_close(2.0 * s, mass_field_entanglement_estimate(xi), 1e-10);
}

TEST_CASE("dense dephasing route at gamma = 0 agrees with the branch-resolved cycle") {
    const double w = 0.5;
    const CouplingMatrix xis = symmetric_pattern(w);  // xi = pi across the off-diagonal
    // extra levels past the recommendation: the dense route builds the
    // displacement from the truncated generator, whose edge error would
    // otherwise dominate a 1e-10 comparison
    const FockSpace fock(cycle_space(xis, w).levels + 16);
    const MediatorRun pure = field_cycle(xis, w, fock);
    const DephasedCycleResult dense = dephased_field_cycle(xis, w, fock, DephasingSpec(0.0));
    // concurrence carries the ~1e-8 Wootters eigensolve floor on both sides;
    // the linear measures resolve the route agreement at 1e-10
    check_close(dense.concurrence, pure.concurrence_final, 1e-7);
    check_close(dense.negativity, pure.negativity_final, 1e-10);
    check_close(dense.field_return_fidelity, pure.field_return_fidelity, 1e-10);
    check_mat_close(dense.mass_mass_state.mat, pure.mass_mass_state.mat, 1e-10);
}

TEST_CASE("negativity decays monotonically with dephasing and dies at large gamma") {
    const double w = 0.5;
    const CouplingMatrix xis = symmetric_pattern(w);
    const FockSpace fock(cycle_space(xis, w));
    double prev = 1.0;
    for (double g : {0.0, 0.01, 0.1, 1.0, 10.0}) {
        const double n = dephased_field_cycle(xis, w, fock, DephasingSpec(g)).negativity;
        CHECK(n <= prev + 1e-12);
        prev = n;
    }
    const DephasedCycleResult dead = dephased_field_cycle(xis, w, fock, DephasingSpec(1e6));
    CHECK(dead.negativity < 1e-12);
}

TEST_CASE("asymmetric patterns keep residual entanglement at infinite dephasing") {
    // with only one kicked branch the diagonal phases alone entangle; full
    // dephasing cannot remove that part
    const double w = 0.5;
    const CouplingMatrix xis = corner_pattern(kPi, w);
    const FockSpace fock(cycle_space(xis, w));
    const DephasedCycleResult r = dephased_field_cycle(xis, w, fock, DephasingSpec(1e6));
    CHECK(r.negativity > 0.01);
}

TEST_CASE("threshold search brackets the entanglement-breaking strength") {
    const double w = 0.5;
    const CouplingMatrix xis = symmetric_pattern(w);
    // headroom past the recommendation so the bracket itself is converged in
    // the truncation before we compare against a finer one
    const FockSpace fock(cycle_space(xis, w).levels + 8);
    const double tol = 1e-6;
    const ThresholdBracket br = entanglement_breaking_threshold(xis, w, fock, tol);
    CHECK(br.gamma_lo > 0.0);
    CHECK(br.gamma_hi / br.gamma_lo <= 1.0 + 1e-4 + 1e-12);
    CHECK(br.evaluations > 0);
    CHECK(dephased_field_cycle(xis, w, fock, DephasingSpec(br.gamma_lo)).negativity > tol);
    CHECK(dephased_field_cycle(xis, w, fock, DephasingSpec(br.gamma_hi)).negativity <= tol);

    // truncation refinement moves the bracket by < 0.1% relative
    const FockSpace finer(fock.levels + 8);
    const ThresholdBracket br2 = entanglement_breaking_threshold(xis, w, finer, tol);
    const double mid = std::sqrt(br.gamma_lo * br.gamma_hi);
    const double mid2 = std::sqrt(br2.gamma_lo * br2.gamma_hi);
    CHECK(std::abs(mid2 - mid) / mid < 1e-3);
}

TEST_CASE("threshold search rejects cycles that start separable") {
    const CouplingMatrix xis({0, 0, 0, 0});
    CHECK_THROWS_AS(entanglement_breaking_threshold(xis, 0.5, FockSpace(8)), std::invalid_argument);
}

TEST_CASE("cycles that spill past the truncation edge are rejected loudly") {
    const double w = 1e-3;
    const CouplingMatrix xis = symmetric_pattern(w);  // xi ~ 1571, far beyond 8 levels
    CHECK_THROWS_AS(field_cycle(xis, w, FockSpace(8)), truncation_error);
}

TEST_CASE("recommended cycle truncation keeps every stage below tolerance") {
    const double w = 0.7;
    const CouplingMatrix xis({0.0, 2.0, 2.0, 0.5});
    const int n = recommended_cycle_levels(xis, w, 0.4);
    CHECK(n >= 16);
    CHECK_NOTHROW(field_cycle(xis, w, FockSpace(n), 0.4));
}

TEST_CASE("a coherent background amplitude rides along without breaking the cycle") {
    const double w = 0.05;
    const CouplingMatrix xis({0.0, 0.4, 0.4, 0.0});
    const FockSpace fock(recommended_cycle_levels(xis, w, 1.5));
    const MediatorRun run = field_cycle(xis, w, fock, 1.5);
    CHECK(run.field_return_fidelity > 0.5);
    check_close(trace(run.mass_mass_state.mat).real(), 1.0, 1e-10);
    CHECK(run.mass_mass_state.min_eigenvalue() > -1e-9);
}

}  // TEST_SUITE
