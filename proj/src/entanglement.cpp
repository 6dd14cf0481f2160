#include "gie/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "gie/kernels.hpp"
#include "gie/linalg.hpp"

namespace gie {

BipartitionSpec::BipartitionSpec(CompositeSpace s, std::vector<int> a)
    : space(std::move(s)), side_a(std::move(a)) {
    if (side_a.empty()) throw std::invalid_argument("BipartitionSpec: side_a empty");
    for (size_t k = 0; k < side_a.size(); ++k) {
        if (side_a[k] < 0 || side_a[k] >= space.subsystems())
            throw std::out_of_range("BipartitionSpec: subsystem index out of range");
        if (k > 0 && side_a[k] <= side_a[k - 1])
            throw std::invalid_argument("BipartitionSpec: side_a must be strictly increasing");
    }
    if (static_cast<int>(side_a.size()) == space.subsystems())
        throw std::invalid_argument("BipartitionSpec: side_a must be a proper subset");
}

std::vector<int> BipartitionSpec::side_b() const {
    std::vector<int> b;
    for (int s = 0; s < space.subsystems(); ++s)
        if (std::find(side_a.begin(), side_a.end(), s) == side_a.end()) b.push_back(s);
    return b;
}

namespace {

void require_two_qubits(const CompositeSpace& s, const char* who) {
    if (s.dims != std::vector<int>{2, 2})
        throw std::invalid_argument(std::string(who) + ": expected a two-qubit space");
}

// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y), written out directly:
// Y x Y = antidiag(-1, 1, 1, -1) so the sandwich is a flip of both indices
// with sign (-1)^{parity}.
CMat spin_flipped_conj(const CMat& rho) {
    CMat r(4, 4);
    static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r(i, j) = sign[i] * sign[j] * std::conj(rho(3 - i, 3 - j));
    return r;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho.space, "concurrence");
    const CMat rt = spin_flipped_conj(rho.mat);
    // eigenvalues of rho*rho~ equal those of the Hermitian sqrt(rho) rho~ sqrt(rho)
    const CMat root = sqrt_psd(rho.mat);
    const CMat m = matmul(matmul(root, rt), root);
    std::vector<double> mu = eigvals_hermitian(m);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, mu[k]));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence(const PureState& psi) {
    require_two_qubits(psi.space, "concurrence");
    // exact closed form for pure states: 2|ad - bc| (no eigensolve, so no
    // sqrt-of-residual precision loss near C = 0 or C = 1)
    const CVec& a = psi.amps;
    return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

double negativity(const DensityMatrix& rho, const BipartitionSpec& split) {
    if (!(rho.space == split.space)) throw std::invalid_argument("negativity: space mismatch");
    const CMat pt = partial_transpose(rho, split.side_b());
    double s = 0.0;
    for (double lam : eigvals_hermitian(pt))
        if (lam < 0.0) s -= lam;
    return s;
}

bool is_ppt(const DensityMatrix& rho, const BipartitionSpec& split, double tol) {
    if (!(rho.space == split.space)) throw std::invalid_argument("is_ppt: space mismatch");
    const CMat pt = partial_transpose(rho, split.side_b());
    return eigvals_hermitian(pt).front() >= -tol;
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - rho.purity(); }

double witness_expectation(const DensityMatrix& rho, const PureState& target) {
    require_two_qubits(rho.space, "witness_expectation");
    require_two_qubits(target.space, "witness_expectation");
    // maximally entangled <=> both marginals are I/2
    const DensityMatrix t = target.to_density();
    for (int side = 0; side < 2; ++side) {
        const CMat m = partial_trace_raw(t.mat, {2, 2}, {side});
        if (std::abs(m(0, 0) - Cx(0.5)) > 1e-10 || std::abs(m(1, 1) - Cx(0.5)) > 1e-10 ||
            std::abs(m(0, 1)) > 1e-10)
            throw std::invalid_argument("witness_expectation: target is not maximally entangled");
    }
    Cx overlap = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) overlap += std::conj(target.amps[i]) * rho.mat(i, j) * target.amps[j];
    return 0.5 - overlap.real();
}

std::array<PureState, 4> bell_states() {
    const CompositeSpace s = qubits(2);
    const double r = 1.0 / std::sqrt(2.0);
    return {PureState(s, {r, 0, 0, r}), PureState(s, {r, 0, 0, -r}),
            PureState(s, {0, r, r, 0}), PureState(s, {0, r, -r, 0})};
}

double best_projective_witness(const DensityMatrix& rho) {
    const CompositeSpace s = qubits(2);
    std::vector<PureState> targets;
    for (auto& b : bell_states()) targets.push_back(b);
    const Cx i(0.0, 1.0);
    // extremal states of the interferometer phase family
    targets.push_back(PureState(s, {0.5, 0.5, 0.5, -0.5}));
    targets.push_back(PureState(s, {0.5, -0.5, -0.5, -0.5}));
    targets.push_back(PureState(s, {0.5, 0.5 * i, 0.5 * i, 0.5}));
    targets.push_back(PureState(s, {0.5, -0.5 * i, -0.5 * i, 0.5}));
    double best = 0.5;
    for (const auto& t : targets) best = std::min(best, witness_expectation(rho, t));
    return best;
}

}  // namespace gie
