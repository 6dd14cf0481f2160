#include <cmath>

#include "doctest.h"
#include "gie/fock.hpp"
#include "gie/kernels.hpp"
#include "testutil.hpp"

using namespace gie;
using testutil::check_close;
using testutil::check_mat_close;

namespace {

double mean_photon_number(const CVec& amps) {
    double n = 0.0;
    for (size_t k = 0; k < amps.size(); ++k) n += k * std::norm(amps[k]);
    return n;
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("coherent state carries the Poisson photon statistics") {
    const FockSpace fock(16);
    const double alpha = 0.5;
    const PureState psi = coherent_state(alpha, fock);
    check_close(mean_photon_number(psi.amps), alpha * alpha, 1e-10);
    // individual weights: e^{-|a|^2} |a|^{2n} / n!
    double fact = 1.0;
    for (int n = 0; n < 6; ++n) {
        if (n > 0) fact *= n;
        const double w = std::exp(-alpha * alpha) * std::pow(alpha * alpha, n) / fact;
        check_close(std::norm(psi.amps[n]), w, 1e-12);
    }
}

TEST_CASE("coherent overlap follows exp(-(a-b)^2/2) for real displacements") {
    const int levels = 48;
    const CVec a = coherent_amplitudes(0.8, levels);
    const CVec b = coherent_amplitudes(1.3, levels);
    const Cx ov = inner(a, b);
    check_close(ov, Cx(std::exp(-0.5 * (0.8 - 1.3) * (0.8 - 1.3)), 0.0), 1e-12);
}

TEST_CASE("complex coherent overlap matches the analytic kernel") {
    const int levels = 64;
    const Cx z1(0.7, -0.4), z2(-0.2, 1.1);
    const CVec a = coherent_amplitudes(z1, levels);
    const CVec b = coherent_amplitudes(z2, levels);
    const Cx expected =
        std::exp(-0.5 * (std::norm(z1) + std::norm(z2)) + std::conj(z1) * z2);
    check_close(inner(a, b), expected, 1e-10);
}

TEST_CASE("alpha = 0 is the vacuum") {
    const CVec v = coherent_amplitudes(0.0, 8);
    CHECK(v[0] == Cx(1.0));
    for (int n = 1; n < 8; ++n) CHECK(v[n] == Cx(0.0));
}

TEST_CASE("displacement of vacuum is the coherent state") {
    const FockSpace fock(32);
    const double xi = 0.9;
    const CMat d = displacement_operator(xi, fock);
    CVec vac(32, 0.0);
    vac[0] = 1.0;
    const CVec displaced = matvec(d, vac);
    const CVec expected = coherent_amplitudes(std::sqrt(xi), 32);
    for (int n = 0; n < 32; ++n) check_close(displaced[n], expected[n], 1e-9);
}

TEST_CASE("displacement operator is unitary away from the truncation corner") {
    const FockSpace fock(40);
    const CMat d = displacement_operator(0.5, fock);
    const CMat u = matmul(adjoint(d), d);
    // the corner element picks up truncation error; interior is clean
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j)
            check_close(u(i, j), i == j ? Cx(1.0) : Cx(0.0), 1e-9);
    CHECK_THROWS_AS(displacement_operator(-0.1, fock), std::invalid_argument);
    CHECK_THROWS_WITH_AS(displacement_operator(-0.1, fock),
                         doctest::Contains("flip the sign of w"), std::invalid_argument);
}

TEST_CASE("number-phase operator rotates a coherent amplitude") {
    const FockSpace fock(32);
    const double w = 0.37;
    const CMat u = number_phase_operator(w, fock);
    const CVec in = coherent_amplitudes(Cx(1.1, 0.0), 32);
    const CVec out = matvec(u, in);
    const CVec expected = coherent_amplitudes(Cx(1.1, 0.0) * std::exp(Cx(0, w)), 32);
    for (int n = 0; n < 32; ++n) check_close(out[n], expected[n], 1e-12);
}

TEST_CASE("lowering operator has sqrt(n) off-diagonals and bosonic commutator") {
    const int n = 12;
    const CMat a = lowering_operator(n);
    for (int k = 1; k < n; ++k) check_close(a(k - 1, k), Cx(std::sqrt(double(k)), 0), 1e-15);
    const CMat comm = matmul(a, adjoint(a)) - matmul(adjoint(a), a);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            check_close(comm(i, j), i == j ? Cx(1.0) : Cx(0.0), 1e-13);
    // truncation shows up only in the corner
    check_close(comm(n - 1, n - 1), Cx(1.0 - n), 1e-12);
}

TEST_CASE("tail weight matches the exact Poisson tail for small truncations") {
    const double lam = 0.7;  // |alpha|^2
    check_close(coherent_tail_weight(lam, 1), 1.0 - std::exp(-lam), 1e-14);
    check_close(coherent_tail_weight(lam, 2), 1.0 - std::exp(-lam) * (1.0 + lam), 1e-14);
    CHECK(coherent_tail_weight(0.0, 1) == 0.0);
    CHECK(coherent_tail_weight(4.0, 64) < 1e-12);
}

TEST_CASE("recommended_levels yields a truncation below tolerance") {
    const int n = recommended_levels(2.0, 1e-12);
    CHECK(n >= 16);
    CHECK(coherent_tail_weight(4.0, n) < 1e-12);
    CHECK(coherent_tail_weight(4.0, n - 1) >= 1e-12);
}

TEST_CASE("coherent_state rejects truncations that clip the tail") {
    const FockSpace tight(4, 1e-12);
    CHECK_THROWS_AS(coherent_state(2.0, tight), truncation_error);
    try {
        coherent_state(2.0, tight);
    } catch (const truncation_error& e) {
        CHECK(e.tail > 1e-12);
    }
    const FockSpace loose(4, 0.9999);
    CHECK_NOTHROW(coherent_state(2.0, loose));
}

TEST_CASE("FockSpace validates its parameters") {
    CHECK_THROWS_AS(FockSpace(1), std::invalid_argument);
    CHECK_THROWS_AS(FockSpace(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(FockSpace(8, -1.0), std::invalid_argument);
}

}  // TEST_SUITE
