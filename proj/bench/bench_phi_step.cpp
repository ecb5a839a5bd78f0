// Times one application of the contraction map with the serial and OpenMP kernels.
//
//   bench_phi_step [K] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "soliton/picard.hpp"

using namespace soliton;

namespace {

double seconds_per_apply(const PicardMap& map, const IterateState& state, int reps) {
    IterateState out = map.apply(state);  // warm-up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) out = map.apply(state);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t K = argc > 1 ? std::stoul(argv[1]) : 1u << 16;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 20;

    const SolitonParams p = derive_params({5, 1.0, 1.0, 0.0});
    const GridPtr grid = RadialGrid::geometric(0.02, 0.02 * 1e-8, K);
    const PicardMap serial(p, grid, MapVariant::Auto, kernels::Exec::Serial);
    const PicardMap parallel(p, grid, MapVariant::Auto, kernels::Exec::Parallel);

    // Start from a non-trivial iterate so the integrands are not constant.
    const IterateState state = serial.apply(serial.apply(center_state(p, grid)));

    const IterateState a = serial.apply(state);
    const IterateState b = parallel.apply(state);
    const bool identical = a.w_dev == b.w_dev && a.vs == b.vs;

    const double ts = seconds_per_apply(serial, state, reps);
    const double tp = seconds_per_apply(parallel, state, reps);
    std::printf("K = %zu, threads = %d, reps = %d\n", K, omp_get_max_threads(), reps);
    std::printf("serial   %10.3f ms\n", 1e3 * ts);
    std::printf("openmp   %10.3f ms\n", 1e3 * tp);
    std::printf("speedup  %10.2f\n", ts / tp);
    std::printf("results  %s\n", identical ? "bitwise identical" : "DIFFER");
    return identical ? 0 : 1;
}
