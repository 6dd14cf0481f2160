#include "gie/fieldmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gie/entanglement.hpp"
#include "gie/kernels.hpp"

namespace gie {

CouplingMatrix::CouplingMatrix(std::array<double, 4> x) : xi(x) {
    for (double v : xi) {
        if (!std::isfinite(v)) throw std::invalid_argument("CouplingMatrix: non-finite coupling");
        if (v < 0.0)
            throw std::invalid_argument(
                "CouplingMatrix: negative coupling xi = " + std::to_string(v) +
                " (flip the sign of w so every xi = phi/w is non-negative)");
    }
}

double CouplingMatrix::max_xi() const {
    double m = 0.0;
    for (double v : xi) m = std::max(m, v);
    return m;
}

XiFromPhase xi_from_phase(double phi, double w) {
    if (w == 0.0) throw std::invalid_argument("xi_from_phase: w must be non-zero");
    if (!std::isfinite(phi) || !std::isfinite(w))
        throw std::invalid_argument("xi_from_phase: non-finite input");
    const double xi = phi / w;
    return XiFromPhase{xi, xi < 0.0};
}

CouplingMatrix couplings_from_phases(const std::array<double, 4>& phases, double w) {
    std::array<double, 4> xs{};
    for (int i = 0; i < 4; ++i) xs[i] = xi_from_phase(phases[i], w).xi;
    return CouplingMatrix(xs);
}

double mass_field_entanglement_estimate(double xi) {
    if (xi < 0.0) throw std::invalid_argument("mass_field_entanglement_estimate: xi must be >= 0");
    return 1.0 - std::exp(-xi);
}

PlanckRatioPhase planck_ratio_phase(double mass, double distance, double duration,
                                    const PhysicalConstants& k) {
    if (distance <= 0.0) throw std::invalid_argument("distance must be positive");
    if (duration < 0.0) throw std::invalid_argument("duration must be non-negative");
    if (mass < 0.0) throw std::invalid_argument("mass must be non-negative");
    PlanckRatioPhase r;
    const double rm = mass / k.planck_mass;
    r.ratio = rm * rm;
    // use the mass derived from the same constants as the Newton route so the
    // two routes agree to rounding, not to the precision of the tabulated m_P
    const double mp_derived = std::sqrt(k.hbar * k.c / k.G);
    const double rd = mass / mp_derived;
    r.phi_ratio_route = rd * rd * k.c * duration / distance;
    r.phi_newton_route = gravitational_phase(mass, distance, duration, 1.0, k);
    return r;
}

DephasingSpec::DephasingSpec(double g) : gamma(g) {
    if (!(g >= 0.0) || !std::isfinite(g))
        throw std::invalid_argument("DephasingSpec: gamma must be finite and >= 0");
}

namespace {

struct BranchTrack {
    std::array<double, 4> beta{};   // sqrt(xi)
    std::array<Cx, 4> z_mid{};      // after displacement
    std::array<Cx, 4> z_phase{};    // after modulation
    std::array<Cx, 4> z_final{};    // after return displacement
    std::array<double, 4> theta{};  // accumulated branch phase
    double max_amp_sq = 0.0;        // largest |z|^2 over all stages/branches
};

// Closed-form coherent evolution of each branch through the cycle:
//   |a0> -> |a0+b> -> |(a0+b)e^{iw}> -> e^{i b(a0+b) sin w} |(a0+b)e^{iw} - b>
BranchTrack track_branches(const CouplingMatrix& xis, double w, double alpha0) {
    BranchTrack t;
    t.max_amp_sq = alpha0 * alpha0;
    const Cx rot = std::polar(1.0, w);
    for (int p = 0; p < 4; ++p) {
        const double b = std::sqrt(xis.xi[p]);
        t.beta[p] = b;
        t.z_mid[p] = Cx(alpha0 + b, 0.0);
        t.z_phase[p] = t.z_mid[p] * rot;
        t.z_final[p] = t.z_phase[p] - b;
        t.theta[p] = b * (alpha0 + b) * std::sin(w);
        t.max_amp_sq = std::max({t.max_amp_sq, std::norm(t.z_mid[p]), std::norm(t.z_final[p])});
    }
    return t;
}

}  // namespace

int recommended_cycle_levels(const CouplingMatrix& xis, double w, double alpha0, double tail_tol,
                             int min_levels) {
    const BranchTrack t = track_branches(xis, w, alpha0);
    return recommended_levels(std::sqrt(t.max_amp_sq), tail_tol, min_levels);
}

MediatorRun field_cycle(const CouplingMatrix& xis, double w, const FockSpace& fock,
                        double alpha0) {
    if (!std::isfinite(w)) throw std::invalid_argument("field_cycle: non-finite w");
    if (!std::isfinite(alpha0)) throw std::invalid_argument("field_cycle: non-finite alpha0");
    const int n = fock.levels;
    const BranchTrack t = track_branches(xis, w, alpha0);
    const double tail = coherent_tail_weight(t.max_amp_sq, n);
    if (tail >= fock.tail_tolerance)
        throw truncation_error("field_cycle: " + std::to_string(n) +
                                   " levels too few for peak amplitude " +
                                   std::to_string(std::sqrt(t.max_amp_sq)) + " (tail " +
                                   std::to_string(tail) + ")",
                               tail);

    const CVec home = coherent_amplitudes(Cx(alpha0, 0.0), n);
    std::array<CVec, 4> mid, phased, fin;
    std::array<Cx, 4> branch_factor;
    for (int p = 0; p < 4; ++p) {
        mid[p] = coherent_amplitudes(t.z_mid[p], n);
        phased[p] = coherent_amplitudes(t.z_phase[p], n);
        fin[p] = coherent_amplitudes(t.z_final[p], n);
        branch_factor[p] = std::polar(0.5, t.theta[p]);
    }

    const CompositeSpace joint({2, 2, n}, std::max(4 * n, kDefaultMaxDim));
    auto assemble = [&](const std::array<const CVec*, 4>& branch,
                        const std::array<Cx, 4>& coeff) {
        CVec amps(static_cast<size_t>(4) * n);
        for (int p = 0; p < 4; ++p)
            for (int k = 0; k < n; ++k) amps[static_cast<size_t>(p) * n + k] = coeff[p] * (*branch[p])[k];
        return PureState(joint, std::move(amps));
    };
    const std::array<Cx, 4> half{0.5, 0.5, 0.5, 0.5};

    std::vector<PureState> stages;
    stages.reserve(4);
    stages.push_back(assemble({&home, &home, &home, &home}, half));
    stages.push_back(assemble({&mid[0], &mid[1], &mid[2], &mid[3]}, half));
    stages.push_back(assemble({&phased[0], &phased[1], &phased[2], &phased[3]}, half));
    stages.push_back(assemble({&fin[0], &fin[1], &fin[2], &fin[3]}, branch_factor));

    // two-mass marginal after the cycle: Gram matrix of the branch field states
    CMat mm(4, 4);
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            mm(p, q) = branch_factor[p] * std::conj(branch_factor[q]) * inner(fin[q], fin[p]);
    DensityMatrix mass_mass(qubits(2), mm);

    // mid-cycle two-mass purity (the point of maximal mass-field correlation)
    double purity_mid = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) purity_mid += 0.25 * 0.25 * std::norm(inner(mid[q], mid[p]));

    double fidelity = 0.0;
    for (int p = 0; p < 4; ++p) fidelity += 0.25 * std::norm(inner(home, fin[p]));

    const double conc = concurrence(mass_mass);
    const double neg = negativity(mass_mass, BipartitionSpec(mass_mass.space, {0}));
    const double wit = best_projective_witness(mass_mass);

    return MediatorRun{xis,
                       w,
                       alpha0,
                       n,
                       std::move(stages),
                       std::move(mass_mass),
                       conc,
                       neg,
                       wit,
                       fidelity,
                       1.0 - purity_mid};
}

namespace {

// block-diagonal branch-conditional displacement on {2,2,n}
CMat conditional_displacement(const CouplingMatrix& xis, const FockSpace& fock) {
    const int n = fock.levels;
    CMat u(4 * n, 4 * n);
    for (int p = 0; p < 4; ++p) {
        const CMat d = displacement_operator(xis.xi[p], fock);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) u(p * n + i, p * n + j) = d(i, j);
    }
    return u;
}

// numerical hygiene for long conjugation chains: re-symmetrize and fix trace
CMat hermitize_unit_trace(const CMat& m) {
    CMat out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    const Cx tr = trace(out);
    const double s = 1.0 / tr.real();
    for (auto& v : out.a) v *= s;
    return out;
}

}  // namespace

DephasedCycleResult dephased_field_cycle(const CouplingMatrix& xis, double w,
                                         const FockSpace& fock, const DephasingSpec& dephasing,
                                         double alpha0) {
    if (!std::isfinite(w)) throw std::invalid_argument("dephased_field_cycle: non-finite w");
    const int n = fock.levels;
    const std::vector<int> dims{2, 2, n};
    const BranchTrack t = track_branches(xis, w, alpha0);
    const double tail = coherent_tail_weight(t.max_amp_sq, n);
    if (tail >= fock.tail_tolerance)
        throw truncation_error("dephased_field_cycle: " + std::to_string(n) +
                                   " levels too few for peak amplitude " +
                                   std::to_string(std::sqrt(t.max_amp_sq)),
                               tail);

    const CVec home = coherent_amplitudes(Cx(alpha0, 0.0), n);
    CVec psi(static_cast<size_t>(4) * n);
    for (int p = 0; p < 4; ++p)
        for (int k = 0; k < n; ++k) psi[static_cast<size_t>(p) * n + k] = 0.5 * home[k];

    const CMat u = conditional_displacement(xis, fock);
    const CMat uph = kron(CMat::identity(4), number_phase_operator(w, fock));
    const double gamma = dephasing.gamma;

    CMat rho = outer(psi, psi);
    rho = conjugate_with(u, rho);
    rho = dephase_raw(rho, dims, 2, gamma);
    rho = conjugate_with(uph, rho);
    rho = dephase_raw(rho, dims, 2, gamma);
    rho = conjugate_with(adjoint(u), rho);

    const CMat mm = hermitize_unit_trace(partial_trace_raw(rho, dims, {0, 1}));
    const CMat fr = hermitize_unit_trace(partial_trace_raw(rho, dims, {2}));
    DensityMatrix mass_mass(qubits(2), mm, /*check_psd=*/false);

    const double fidelity = inner(home, matvec(fr, home)).real();
    const double conc = concurrence(mass_mass);
    const double neg = negativity(mass_mass, BipartitionSpec(mass_mass.space, {0}));
    const double wit = best_projective_witness(mass_mass);

    return DephasedCycleResult{gamma, std::move(mass_mass), conc, neg, wit, fidelity};
}

ThresholdBracket entanglement_breaking_threshold(const CouplingMatrix& xis, double w,
                                                 const FockSpace& fock, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("entanglement_breaking_threshold: tol must be > 0");
    int evals = 0;
    auto neg_at = [&](double g) {
        ++evals;
        return dephased_field_cycle(xis, w, fock, DephasingSpec(g)).negativity;
    };

    if (neg_at(0.0) <= tol)
        throw std::invalid_argument(
            "entanglement_breaking_threshold: negativity already at/below tol without dephasing");

    double lo = 0.0, hi = 1.0;
    double nhi = neg_at(hi);
    while (nhi > tol) {
        lo = hi;
        hi *= 10.0;
        if (hi > 1e9)
            throw std::runtime_error(
                "entanglement_breaking_threshold: no break below gamma = 1e9");
        nhi = neg_at(hi);
    }
    if (lo == 0.0) {
        // threshold sits below 1: walk down to find a positive lower edge
        for (double probe = hi / 10.0; probe >= 1e-12; probe /= 10.0) {
            if (neg_at(probe) > tol) {
                lo = probe;
                break;
            }
            hi = probe;
        }
        if (lo == 0.0) return ThresholdBracket{0.0, hi, evals};  // degenerate: below 1e-12
    }
    for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-4; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (neg_at(mid) > tol)
            lo = mid;
        else
            hi = mid;
    }
    return ThresholdBracket{lo, hi, evals};
}

}  // namespace gie
