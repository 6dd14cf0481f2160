#include "gie/rng.hpp"

#include <cmath>

#include "gie/kernels.hpp"

namespace gie {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CMat haar_unitary(int n, Rng& rng) {
    // QR of a Ginibre matrix by modified Gram-Schmidt, phases fixed by R's diagonal
    CMat g(n, n);
    for (auto& v : g.a) v = rng.complex_normal();
    CMat q(n, n);
    for (int j = 0; j < n; ++j) {
        CVec col(n);
        for (int i = 0; i < n; ++i) col[i] = g(i, j);
        for (int k = 0; k < j; ++k) {
            Cx proj = 0.0;
            for (int i = 0; i < n; ++i) proj += std::conj(q(i, k)) * col[i];
            for (int i = 0; i < n; ++i) col[i] -= proj * q(i, k);
        }
        double nrm = vec_norm(col);
        if (nrm < 1e-12) throw std::runtime_error("haar_unitary: degenerate sample");
        // R_jj = nrm * phase(col_j before normalization); divide it out so the
        // distribution is Haar rather than QR-gauge-dependent
        Cx lead = col[j];
        Cx phase = std::abs(lead) > 1e-300 ? lead / std::abs(lead) : Cx(1.0);
        for (int i = 0; i < n; ++i) q(i, j) = col[i] / (nrm * phase);
    }
    return q;
}

PureState random_pure(const CompositeSpace& space, Rng& rng) {
    CVec a(space.total_dim());
    for (auto& v : a) v = rng.complex_normal();
    return PureState::normalized(space, std::move(a));
}

DensityMatrix random_density(const CompositeSpace& space, Rng& rng) {
    const int d = space.total_dim();
    CMat g(d, d);
    for (auto& v : g.a) v = rng.complex_normal();
    CMat w = matmul(g, adjoint(g));
    const double tr = trace(w).real();
    CMat rho = Cx(1.0 / tr) * w;
    // symmetrize away the last bits of rounding
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const Cx m = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = m;
            rho(j, i) = std::conj(m);
        }
    for (int i = 0; i < d; ++i) rho(i, i) = Cx(rho(i, i).real(), 0.0);
    // re-fix the trace after symmetrization
    Cx tr2 = trace(rho);
    rho = Cx(1.0 / tr2.real()) * rho;
    return DensityMatrix(space, std::move(rho), false);
}

std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform());
        s += v;
    }
    for (auto& v : p) v /= s;
    return p;
}

}  // namespace gie
