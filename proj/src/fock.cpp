#include "gie/fock.hpp"

#include <cmath>

#include "gie/linalg.hpp"

namespace gie {

double coherent_tail_weight(double alpha_sq, int levels) {
    if (alpha_sq < 0.0) throw std::invalid_argument("coherent_tail_weight: |alpha|^2 < 0");
    if (alpha_sq == 0.0) return 0.0;
    // sum the Poisson pmf upward from n = levels; terms decay fast past the mean
    const double lambda = alpha_sq;
    double log_term = -lambda + levels * std::log(lambda) - std::lgamma(levels + 1.0);
    double term = std::exp(log_term);
    double sum = 0.0;
    for (int n = levels; n < levels + 20000; ++n) {
        sum += term;
        term *= lambda / (n + 1);
        if (term < sum * 1e-18 && n > lambda) break;
    }
    return std::min(sum, 1.0);
}

int recommended_levels(double alpha_max, double tail_tol, int min_levels) {
    const double asq = alpha_max * alpha_max;
    int n = std::max(min_levels, 2);
    // jump near the Poisson bulk, then walk to the tolerance
    if (asq > 4.0) n = std::max(n, static_cast<int>(asq));
    while (coherent_tail_weight(asq, n) >= tail_tol) {
        ++n;
        if (n > 2000000) throw std::invalid_argument("recommended_levels: amplitude too large");
    }
    return n;
}

CVec coherent_amplitudes(Cx alpha, int levels) {
    if (levels < 2) throw std::invalid_argument("coherent_amplitudes: need >= 2 levels");
    CVec c(levels, 0.0);
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        c[0] = 1.0;
        return c;
    }
    const double arg = std::arg(alpha);
    const double log_mag = std::log(mag);
    double norm_sq = 0.0;
    for (int n = 0; n < levels; ++n) {
        // log of e^{-|a|^2/2} a^n / sqrt(n!)
        const double lm = -0.5 * mag * mag + n * log_mag - 0.5 * std::lgamma(n + 1.0);
        if (lm > -745.0) {  // else underflows to 0 anyway
            const double m = std::exp(lm);
            c[n] = std::polar(m, n * arg);
            norm_sq += m * m;
        }
    }
    if (norm_sq < 1e-300)
        throw truncation_error("coherent_amplitudes: all weight beyond truncation", 1.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& v : c) v *= inv;
    return c;
}

PureState coherent_state(double alpha, const FockSpace& fock) {
    const double tail = coherent_tail_weight(alpha * alpha, fock.levels);
    if (tail >= fock.tail_tolerance)
        throw truncation_error("coherent_state: truncation too small for amplitude " +
                                   std::to_string(alpha) + " (tail " + std::to_string(tail) + ")",
                               tail);
    return PureState(CompositeSpace({fock.levels}, std::max(fock.levels, kDefaultMaxDim)),
                     coherent_amplitudes(Cx(alpha, 0.0), fock.levels));
}

CMat lowering_operator(int levels) {
    CMat a(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

CMat displacement_operator(double xi, const FockSpace& fock) {
    if (xi < 0.0)
        throw std::invalid_argument("displacement_operator: xi must be >= 0 (flip the sign of w instead)");
    const double tail = coherent_tail_weight(xi, fock.levels);
    if (tail >= fock.tail_tolerance)
        throw truncation_error("displacement_operator: truncation too small for sqrt(xi) = " +
                                   std::to_string(std::sqrt(xi)),
                               tail);
    const int n = fock.levels;
    const double r = std::sqrt(xi);
    CMat gen(n, n);  // sqrt(xi) (a^dag - a)
    for (int k = 1; k < n; ++k) {
        const double s = r * std::sqrt(static_cast<double>(k));
        gen(k, k - 1) = s;
        gen(k - 1, k) = -s;
    }
    return expm(gen);
}

CMat number_phase_operator(double w, const FockSpace& fock) {
    CMat m(fock.levels, fock.levels);
    for (int n = 0; n < fock.levels; ++n) m(n, n) = std::polar(1.0, w * n);
    return m;
}

}  // namespace gie
