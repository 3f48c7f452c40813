//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file bench.cpp
//  \brief serial vs OpenMP timings for the two data-parallel kernels: the lapse-flow
//         right side over theta nodes and the dominance-inequality sampler

#include <chrono>
#include <functional>
#include <cmath>
#include <cstdio>
#include <vector>

#include "flow/quasispherical.hpp"
#include "mass/energy.hpp"
#include "surface/axisym.hpp"

#ifdef QLM_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int k = 0; k < reps; ++k) {
    auto t0 = Clock::now();
    body();
    auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void bench_flow_rhs(int n_theta, int evals) {
  qlm::ParallelFoliation fol(qlm::weyl_embed(qlm::ellipsoid_metric(1.0, 2.0, n_theta)));
  std::vector<double> h(n_theta), out(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    h[i] = 1.0 + 0.1 * std::cos(2.0 * fol.grid().center(i));
  }
  qlm::FlowWorkspace ws;

  const double ts = time_best_of(3, [&] {
    for (int k = 0; k < evals; ++k) {
      qlm::flow_rhs_serial(fol, 0.01 * k, h, out, ws);
    }
  });
  const double tp = time_best_of(3, [&] {
    for (int k = 0; k < evals; ++k) {
      qlm::flow_rhs_parallel(fol, 0.01 * k, h, out, ws);
    }
  });
  std::printf("flow rhs      n_theta=%6d  serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx\n",
              n_theta, 1e3 * ts, 1e3 * tp, ts / tp);
}

void bench_dominance(std::uint64_t n) {
  const double ts =
      time_best_of(3, [&] { (void)qlm::boundary_dominance_scan_serial(7, n); });
  const double tp = time_best_of(3, [&] { (void)qlm::boundary_dominance_scan(7, n); });
  std::printf("dominance scan  n=%8llu  serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx\n",
              static_cast<unsigned long long>(n), 1e3 * ts, 1e3 * tp, ts / tp);
}

}  // namespace

int main() {
#ifdef QLM_HAVE_OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; parallel kernels fall back to the serial path\n");
#endif
  bench_flow_rhs(1024, 2000);
  bench_flow_rhs(8192, 400);
  bench_flow_rhs(65536, 50);
  bench_dominance(200000);
  bench_dominance(5000000);
  return 0;
}
