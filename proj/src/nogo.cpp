#include "gie/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gie/entanglement.hpp"
#include "gie/kernels.hpp"

namespace gie {

namespace {

constexpr double kOpTol = 1e-10;

void check_square(const CMat& m, int n, const char* what) {
    if (m.rows != n || m.cols != n)
        throw std::invalid_argument(std::string(what) + ": wrong dimension");
}

void check_unitary(const CMat& u, const char* what) {
    const CMat prod = matmul(adjoint(u), u);
    if (max_abs_diff(prod, CMat::identity(u.rows)) > kOpTol)
        throw std::invalid_argument(std::string(what) + ": matrix is not unitary");
}

void check_complete(const std::vector<CMat>& ks, int dim, const char* what) {
    if (ks.empty()) throw std::invalid_argument(std::string(what) + ": no Kraus operators");
    CMat sum(dim, dim);
    for (const CMat& k : ks) {
        check_square(k, dim, what);
        const CMat kk = matmul(adjoint(k), k);
        for (size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += kk.a[i];
    }
    if (max_abs_diff(sum, CMat::identity(dim)) > kOpTol)
        throw std::invalid_argument(std::string(what) + ": Kraus set is not trace-preserving");
}

// Does the channel commute with complete dephasing of C? Checked exactly on
// matrix units: E(|p><q|) = sum_K (K col p)(K col q)^dag must keep C-diagonal
// inputs C-diagonal and C-off-diagonal inputs C-off-diagonal.
bool dephasing_covariant(const std::vector<CMat>& ks, int d_c, bool with_qubit) {
    const int m = with_qubit ? 2 * d_c : d_c;
    auto c_of = [&](int i) { return with_qubit ? i % d_c : i; };
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            const bool diag_in = c_of(p) == c_of(q);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    const bool diag_out = c_of(i) == c_of(j);
                    if (diag_in == diag_out) continue;
                    Cx v = 0.0;
                    for (const CMat& k : ks) v += k(i, p) * std::conj(k(j, q));
                    if (std::abs(v) > kOpTol) return false;
                }
            }
        }
    }
    return true;
}

void check_target(int target) {
    if (target != 0 && target != 1)
        throw std::invalid_argument("ClassicalOp: qubit target must be 0 or 1");
}

void check_dc(int d_c) {
    if (d_c < 2 || d_c > 4)
        throw std::invalid_argument("ClassicalOp: mediator dimension must be 2..4");
}

ClassicalOp make_op(ClassicalOpKind kind, int target, int d_c, std::vector<CMat> ks,
                    bool enforce_covariance) {
    const bool with_qubit = target >= 0;
    check_complete(ks, with_qubit ? 2 * d_c : d_c, "ClassicalOp");
    const bool cov = dephasing_covariant(ks, d_c, with_qubit);
    if (enforce_covariance && !cov)
        throw std::invalid_argument("ClassicalOp: operation is not dephasing-covariant on C");
    return ClassicalOp{kind, target, d_c, cov, std::move(ks)};
}

}  // namespace

ClassicalOp ClassicalOp::controlled_unitary(int target, const std::vector<CMat>& u_per_c) {
    check_target(target);
    const int d_c = static_cast<int>(u_per_c.size());
    check_dc(d_c);
    CMat k(2 * d_c, 2 * d_c);
    for (int c = 0; c < d_c; ++c) {
        check_square(u_per_c[c], 2, "controlled_unitary");
        check_unitary(u_per_c[c], "controlled_unitary");
        for (int qr = 0; qr < 2; ++qr)
            for (int qc = 0; qc < 2; ++qc) k(qr * d_c + c, qc * d_c + c) = u_per_c[c](qr, qc);
    }
    return make_op(ClassicalOpKind::controlled_unitary, target, d_c, {std::move(k)}, true);
}

ClassicalOp ClassicalOp::measure_and_permute(int target, const CMat& basis,
                                             const std::array<std::vector<int>, 2>& perms) {
    check_target(target);
    check_square(basis, 2, "measure_and_permute");
    check_unitary(basis, "measure_and_permute");
    const int d_c = static_cast<int>(perms[0].size());
    check_dc(d_c);
    for (const auto& perm : perms) {
        if (static_cast<int>(perm.size()) != d_c)
            throw std::invalid_argument("measure_and_permute: permutation size mismatch");
        std::vector<bool> seen(d_c, false);
        for (int v : perm) {
            if (v < 0 || v >= d_c || seen[v])
                throw std::invalid_argument("measure_and_permute: not a permutation");
            seen[v] = true;
        }
    }
    std::vector<CMat> ks;
    for (int o = 0; o < 2; ++o) {
        CMat k(2 * d_c, 2 * d_c);
        // |m_o><m_o| on the qubit (column o of basis), C index c -> perm[c]
        for (int qr = 0; qr < 2; ++qr)
            for (int qc = 0; qc < 2; ++qc)
                for (int c = 0; c < d_c; ++c)
                    k(qr * d_c + perms[o][c], qc * d_c + c) =
                        basis(qr, o) * std::conj(basis(qc, o));
        ks.push_back(std::move(k));
    }
    return make_op(ClassicalOpKind::measure_and_permute, target, d_c, std::move(ks), true);
}

ClassicalOp ClassicalOp::local_unitary(int target, const CMat& u2, int d_c) {
    check_target(target);
    check_dc(d_c);
    check_square(u2, 2, "local_unitary");
    check_unitary(u2, "local_unitary");
    return make_op(ClassicalOpKind::local_unitary, target, d_c,
                   {kron(u2, CMat::identity(d_c))}, true);
}

ClassicalOp ClassicalOp::stochastic_map(const std::vector<std::vector<double>>& s) {
    const int d_c = static_cast<int>(s.size());
    check_dc(d_c);
    std::vector<CMat> ks;
    for (int c = 0; c < d_c; ++c) {
        if (static_cast<int>(s[c].size()) != d_c)
            throw std::invalid_argument("stochastic_map: matrix must be square");
        double row = 0.0;
        for (int cc = 0; cc < d_c; ++cc) {
            const double p = s[c][cc];
            if (p < -1e-12) throw std::invalid_argument("stochastic_map: negative probability");
            row += p;
            if (p > 0.0) {
                CMat k(d_c, d_c);  // sqrt(p) |cc><c|
                k(cc, c) = std::sqrt(p);
                ks.push_back(std::move(k));
            }
        }
        if (std::abs(row - 1.0) > kOpTol)
            throw std::invalid_argument("stochastic_map: rows must sum to 1");
    }
    return make_op(ClassicalOpKind::stochastic_map, -1, d_c, std::move(ks), true);
}

ClassicalOp ClassicalOp::general_kraus(int target, int d_c, std::vector<CMat> ks) {
    check_target(target);
    check_dc(d_c);
    return make_op(ClassicalOpKind::general_kraus, target, d_c, std::move(ks), false);
}

ClassicalCircuit::ClassicalCircuit(int dc, std::vector<ClassicalOp> o) : d_c(dc), ops(std::move(o)) {
    check_dc(d_c);
    for (const auto& op : ops)
        if (op.d_c != d_c)
            throw std::invalid_argument("ClassicalCircuit: op mediator dimension mismatch");
}

DensityMatrix product_initial_state(const DensityMatrix& q1, const DensityMatrix& q2,
                                    const std::vector<double>& c_populations) {
    if (q1.space.dims != std::vector<int>{2} || q2.space.dims != std::vector<int>{2})
        throw std::invalid_argument("product_initial_state: mass factors must be single qubits");
    const int d_c = static_cast<int>(c_populations.size());
    check_dc(d_c);
    double sum = 0.0;
    CMat c(d_c, d_c);
    for (int i = 0; i < d_c; ++i) {
        if (c_populations[i] < -1e-12)
            throw std::invalid_argument("product_initial_state: negative population");
        c(i, i) = c_populations[i];
        sum += c_populations[i];
    }
    if (std::abs(sum - 1.0) > kOpTol)
        throw std::invalid_argument("product_initial_state: populations must sum to 1");
    return tensor(tensor(q1, q2), DensityMatrix(CompositeSpace({d_c}), std::move(c)));
}

namespace {

// lift an acting-space Kraus operator (target qubit (x) C, or C alone) to the
// full {2,2,d_c} space
CMat embed_on(const CMat& k, int d_c, int target) {
    const int full = 4 * d_c;
    CMat out(full, full);
    for (int fr = 0; fr < full; ++fr) {
        const int c_r = fr % d_c, a2 = (fr / d_c) % 2, a1 = fr / (2 * d_c);
        for (int fc = 0; fc < full; ++fc) {
            const int c_c = fc % d_c, b2 = (fc / d_c) % 2, b1 = fc / (2 * d_c);
            if (target == 0) {
                if (a2 == b2) out(fr, fc) = k(a1 * d_c + c_r, b1 * d_c + c_c);
            } else if (target == 1) {
                if (a1 == b1) out(fr, fc) = k(a2 * d_c + c_r, b2 * d_c + c_c);
            } else {
                if (a1 == b1 && a2 == b2) out(fr, fc) = k(c_r, c_c);
            }
        }
    }
    return out;
}

DensityMatrix run_circuit(const ClassicalCircuit& circuit, const DensityMatrix& initial) {
    const std::vector<int> want{2, 2, circuit.d_c};
    if (initial.space.dims != want)
        throw std::invalid_argument("circuit and initial state disagree on dimensions");
    CMat rho = initial.mat;
    const int full = 4 * circuit.d_c;
    for (const auto& op : circuit.ops) {
        CMat next(full, full);
        for (const CMat& k : op.kraus) {
            const CMat kf = embed_on(k, circuit.d_c, op.q_target);
            const CMat term = matmul(matmul(kf, rho), adjoint(kf));
            for (size_t i = 0; i < next.a.size(); ++i) next.a[i] += term.a[i];
        }
        rho = std::move(next);
    }
    return DensityMatrix(initial.space, std::move(rho), /*check_psd=*/false);
}

}  // namespace

DensityMatrix apply_classical_circuit(const ClassicalCircuit& circuit,
                                      const DensityMatrix& initial) {
    for (const auto& op : circuit.ops)
        if (!op.covariant)
            throw std::invalid_argument(
                "apply_classical_circuit: circuit contains a non-covariant op");
    // the mediator must start classical...
    const DensityMatrix c_marg = partial_trace(initial, {2});
    for (int i = 0; i < c_marg.mat.rows; ++i)
        for (int j = 0; j < c_marg.mat.cols; ++j)
            if (i != j && std::abs(c_marg.mat(i, j)) > kOpTol)
                throw std::invalid_argument(
                    "apply_classical_circuit: mediator marginal carries coherences");
    // ...and uncorrelated with the masses (and the masses with each other)
    const DensityMatrix q1 = partial_trace(initial, {0});
    const DensityMatrix q2 = partial_trace(initial, {1});
    const DensityMatrix rebuilt = tensor(tensor(q1, q2), c_marg);
    if (max_abs_diff(rebuilt.mat, initial.mat) > kOpTol)
        throw std::invalid_argument("apply_classical_circuit: initial state is not a product");
    return run_circuit(circuit, initial);
}

DensityMatrix apply_circuit_unchecked(const ClassicalCircuit& circuit,
                                      const DensityMatrix& initial) {
    return run_circuit(circuit, initial);
}

ClassicalCircuit random_classical_circuit(int depth, int d_c, Rng& rng) {
    if (depth < 1) throw std::invalid_argument("random_classical_circuit: depth must be >= 1");
    check_dc(d_c);
    auto random_perm = [&](int n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.uniform_int(0, i)]);
        return p;
    };
    std::vector<ClassicalOp> ops;
    int target = rng.uniform_int(0, 1);
    for (int step = 0; step < depth; ++step) {
        switch (rng.uniform_int(0, 3)) {
            case 0: {
                std::vector<CMat> us;
                for (int c = 0; c < d_c; ++c) us.push_back(haar_unitary(2, rng));
                ops.push_back(ClassicalOp::controlled_unitary(target, us));
                break;
            }
            case 1:
                ops.push_back(ClassicalOp::measure_and_permute(
                    target, haar_unitary(2, rng), {random_perm(d_c), random_perm(d_c)}));
                break;
            case 2:
                ops.push_back(ClassicalOp::local_unitary(target, haar_unitary(2, rng), d_c));
                break;
            default: {
                std::vector<std::vector<double>> s;
                for (int c = 0; c < d_c; ++c) s.push_back(random_simplex(d_c, rng));
                ops.push_back(ClassicalOp::stochastic_map(s));
                break;
            }
        }
        target = 1 - target;
    }
    return ClassicalCircuit(d_c, std::move(ops));
}

ClassicalCircuit random_classical_circuit(int depth, int d_c, uint64_t seed) {
    Rng rng(seed);
    return random_classical_circuit(depth, d_c, rng);
}

NoGoReport verify_no_go(int trials, int max_depth, uint64_t master_seed, int fixed_dc) {
    if (trials < 1) throw std::invalid_argument("verify_no_go: trials must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("verify_no_go: max_depth must be >= 1");
    if (fixed_dc != 0) check_dc(fixed_dc);
    std::vector<TrialRecord> records(trials);

#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) {
        const uint64_t seed = derive_seed(master_seed, static_cast<uint64_t>(t));
        Rng rng(seed);
        const int d_c = fixed_dc != 0 ? fixed_dc : 2 + t % 3;
        const int depth = rng.uniform_int(1, max_depth);
        const ClassicalCircuit circuit = random_classical_circuit(depth, d_c, rng);
        const DensityMatrix q1 = random_pure(qubits(1), rng).to_density();
        const DensityMatrix q2 = random_pure(qubits(1), rng).to_density();
        const DensityMatrix initial = product_initial_state(q1, q2, random_simplex(d_c, rng));
        const DensityMatrix final_state = apply_classical_circuit(circuit, initial);
        const DensityMatrix mass = partial_trace(final_state, {0, 1});

        TrialRecord rec;
        rec.seed = seed;
        rec.depth = depth;
        rec.d_c = d_c;
        const BipartitionSpec split(mass.space, {0});
        rec.negativity = negativity(mass, split);
        rec.ppt = is_ppt(mass, split);
        double wmin = 1e300;
        for (const PureState& bell : bell_states())
            wmin = std::min(wmin, witness_expectation(mass, bell));
        rec.witness_min = wmin;
        records[t] = rec;
    }

    NoGoReport report;
    report.master_seed = master_seed;
    report.trials = trials;
    for (const TrialRecord& r : records) {
        report.max_negativity = std::max(report.max_negativity, r.negativity);
        report.max_witness_violation = std::max(report.max_witness_violation, -r.witness_min);
        if (r.negativity > 1e-10 || r.witness_min < -1e-10 || !r.ppt) ++report.failures;
    }
    report.max_witness_violation = std::max(report.max_witness_violation, 0.0);
    report.records = std::move(records);
    return report;
}

CounterexampleReport quantum_mediator_counterexample(bool superposed_control) {
    CMat eye = CMat::identity(2);
    CMat x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    CMat z = CMat::identity(2);
    z(1, 1) = -1.0;
    CMat proj_plus(2, 2), proj_minus(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            proj_plus(i, j) = 0.5;
            proj_minus(i, j) = (i == j) ? 0.5 : -0.5;
        }

    std::vector<ClassicalOp> ops;
    ops.push_back(ClassicalOp::controlled_unitary(0, {eye, x}));
    ops.push_back(ClassicalOp::controlled_unitary(1, {eye, x}));
    // coherent readout: measure C along |+>/|->, phase-correct the second mass
    ops.push_back(ClassicalOp::general_kraus(
        1, 2, {kron(eye, proj_plus), kron(z, proj_minus)}));
    const ClassicalCircuit circuit(2, std::move(ops));

    const DensityMatrix q0 = PureState::basis(qubits(1), 0).to_density();
    const DensityMatrix control =
        superposed_control ? DensityMatrix(CompositeSpace({2}), proj_plus)
                           : PureState::basis(CompositeSpace({2}), 0).to_density();
    const DensityMatrix initial = tensor(tensor(q0, q0), control);

    const DensityMatrix final_state = apply_circuit_unchecked(circuit, initial);
    DensityMatrix mass = partial_trace(final_state, {0, 1});

    CounterexampleReport rep{superposed_control,
                             {},
                             mass,
                             negativity(mass, BipartitionSpec(mass.space, {0})),
                             concurrence(mass),
                             0.0};
    for (const auto& op : circuit.ops) rep.step_covariant.push_back(op.covariant);
    double wmin = 1e300;
    for (const PureState& bell : bell_states())
        wmin = std::min(wmin, witness_expectation(mass, bell));
    rep.witness_min = wmin;
    return rep;
}

}  // namespace gie
