#pragma once

#include <cstdint>
#include <random>

#include "gie/states.hpp"

namespace gie {

// Stable per-index seed derivation so parallel trial loops are reproducible
// regardless of scheduling.
uint64_t splitmix64(uint64_t x);
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
    Cx complex_normal() { return {normal(), normal()}; }
};

CMat haar_unitary(int n, Rng& rng);
PureState random_pure(const CompositeSpace& space, Rng& rng);
// random full-rank density matrix (Ginibre G G^dag normalized)
DensityMatrix random_density(const CompositeSpace& space, Rng& rng);
// point on the probability simplex (for diagonal classical states)
std::vector<double> random_simplex(int n, Rng& rng);

}  // namespace gie
