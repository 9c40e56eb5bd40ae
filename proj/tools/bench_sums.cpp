// Benchmark of the brute-force lattice zeta sum: OpenMP term fill vs the
// serial reference, with a bitwise-equality check of the pairwise reduction.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ict/section.hpp"

using clk = std::chrono::steady_clock;

static double time_best(double (*f)(double, double, double, double, long), long R,
                        int reps, double* out) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = clk::now();
    *out = f(2 * 3.141592653589793, 2 * 3.141592653589793, 1.5, 0.25, R);
    double dt = std::chrono::duration<double>(clk::now() - t0).count();
    if (dt < best) best = dt;
  }
  return best;
}

int main(int argc, char** argv) {
  long R = argc > 1 ? std::atol(argv[1]) : 2000;
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%10s %12s %12s %8s %s\n", "R", "parallel[s]", "serial[s]", "speedup",
              "bitwise");
  bool all_equal = true;
  for (long r = R / 4; r <= R; r *= 2) {
    double vp = 0, vs = 0;
    double tp = time_best(ict::torus_zeta_direct, r, reps, &vp);
    double ts = time_best(ict::torus_zeta_direct_serial, r, reps, &vs);
    bool eq = std::memcmp(&vp, &vs, sizeof vp) == 0;
    all_equal = all_equal && eq;
    std::printf("%10ld %12.4f %12.4f %8.2f %s\n", r, tp, ts, ts / tp,
                eq ? "equal" : "DIFFER");
  }
  if (!all_equal) {
    std::printf("FAIL: parallel and serial sums differ\n");
    return 1;
  }
  std::printf("parallel and serial sums bitwise equal at every size\n");
  return 0;
}
