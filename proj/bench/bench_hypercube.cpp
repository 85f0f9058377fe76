// Serial reference vs OpenMP kernel for one optimizer run.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "qtradeoff/hypercube.hpp"

using namespace qtradeoff;

namespace {

template <class F>
double seconds(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv)
{
    GridSpec grid;
    grid.s_grid = argc > 1 ? std::atoi(argv[1]) : 128;
    grid.alpha_grid = argc > 2 ? std::atoi(argv[2]) : 64;
    grid.k = argc > 3 ? std::atoi(argv[3]) : 6;
    grid.validate();

    HypercubeResult serial, parallel;
    const double ts = seconds([&] { serial = optimize_serial(grid); });
    const double tp = seconds([&] { parallel = optimize(grid); });
    std::printf("grid s=%d alpha=%d k=%d threads=%d\n", grid.s_grid, grid.alpha_grid, grid.k,
                omp_get_max_threads());
    std::printf("serial   %8.3f s  depth=%d\n", ts, serial.depth_reached);
    std::printf("openmp   %8.3f s  depth=%d  speedup=%.2fx\n", tp, parallel.depth_reached, ts / tp);
    std::printf("identical=%s\n", serial.t_row == parallel.t_row ? "yes" : "no");
    return serial.t_row == parallel.t_row ? 0 : 1;
}
