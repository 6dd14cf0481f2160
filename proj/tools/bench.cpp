// Compares the OpenMP kernels against their serial reference twins and times
// the two main composite workloads (no-go trial batches, dephased cycles).
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gie/fieldmodel.hpp"
#include "gie/kernels.hpp"
#include "gie/nogo.hpp"
#include "gie/rng.hpp"

namespace {

gie::CMat random_matrix(int n, gie::Rng& rng) {
    gie::CMat m(n, n);
    for (auto& v : m.a) v = rng.complex_normal();
    return m;
}

double time_best_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, int n, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-22s %6d %12.3f %12.3f %9.2fx %11.2e\n", name.c_str(), n, serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-22s %6s %12s %12s %10s %11s\n", "kernel", "n", "serial[ms]", "openmp[ms]",
                "speedup", "max|diff|");

    gie::Rng rng(7);
    for (int n : {96, 192, 320}) {
        const gie::CMat a = random_matrix(n, rng);
        const gie::CMat b = random_matrix(n, rng);
        gie::CMat rs(0, 0), rp(0, 0);
        const double ts = time_best_ms([&] { rs = gie::ref::matmul(a, b); }, 3);
        const double tp = time_best_ms([&] { rp = gie::matmul(a, b); }, 3);
        row("matmul", n, ts, tp, gie::max_abs_diff(rs, rp));
    }

    for (int n : {24, 40}) {
        const gie::CMat a = random_matrix(n, rng);
        const gie::CMat b = random_matrix(n, rng);
        gie::CMat rs(0, 0), rp(0, 0);
        const double ts = time_best_ms([&] { rs = gie::ref::kron(a, b); }, 3);
        const double tp = time_best_ms([&] { rp = gie::kron(a, b); }, 3);
        row("kron", n * n, ts, tp, gie::max_abs_diff(rs, rp));
    }

    for (int levels : {48, 96}) {
        const std::vector<int> dims{2, 2, levels};
        const int total = 4 * levels;
        gie::CMat rho = random_matrix(total, rng);
        // hermitize so the input resembles a state
        for (int i = 0; i < total; ++i)
            for (int j = 0; j < i; ++j) rho(i, j) = std::conj(rho(j, i));
        gie::CMat rs(0, 0), rp(0, 0);
        double ts = time_best_ms([&] { rs = gie::ref::partial_trace_raw(rho, dims, {0, 1}); }, 5);
        double tp = time_best_ms([&] { rp = gie::partial_trace_raw(rho, dims, {0, 1}); }, 5);
        row("partial_trace", total, ts, tp, gie::max_abs_diff(rs, rp));

        ts = time_best_ms([&] { rs = gie::ref::dephase_raw(rho, dims, 2, 0.3); }, 5);
        tp = time_best_ms([&] { rp = gie::dephase_raw(rho, dims, 2, 0.3); }, 5);
        row("dephase", total, ts, tp, gie::max_abs_diff(rs, rp));
    }

    {
        const auto t0 = std::chrono::steady_clock::now();
        const gie::NoGoReport rep = gie::verify_no_go(128, 5, 11);
        const auto t1 = std::chrono::steady_clock::now();
        std::printf("nogo batch (128 trials)      %10.1f ms   max_negativity %.2e\n",
                    std::chrono::duration<double, std::milli>(t1 - t0).count(),
                    rep.max_negativity);
    }

    {
        const gie::CouplingMatrix xis({0.0, 3.9269908169872414, 3.9269908169872414, 0.0});
        const gie::FockSpace fock(gie::recommended_cycle_levels(xis, 0.4));
        const auto t0 = std::chrono::steady_clock::now();
        const gie::DephasedCycleResult r =
            gie::dephased_field_cycle(xis, 0.4, fock, gie::DephasingSpec(0.5));
        const auto t1 = std::chrono::steady_clock::now();
        std::printf("dephased cycle (N=%d)        %10.1f ms   negativity %.4f\n", fock.levels,
                    std::chrono::duration<double, std::milli>(t1 - t0).count(), r.negativity);
    }
    return 0;
}
