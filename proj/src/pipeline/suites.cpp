//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file suites.cpp

#include "pipeline/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "flow/quasispherical.hpp"
#include "mass/energy.hpp"
#include "surface/axisym.hpp"

namespace qlm {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}
}  // namespace

SuiteResult suite_dominance(std::uint64_t seed, std::uint64_t n_samples) {
  DominanceScan scan = boundary_dominance_scan(seed, n_samples);
  SuiteResult r;
  r.pass = scan.min_margin >= -1e-12;
  r.summary = fmt("min margin %.3e over %g samples (argmin c3 = %.3g)", scan.min_margin,
                  double(scan.count), scan.argmin.c3);
  return r;
}

SuiteResult suite_minkowski(int n_theta) {
  SuiteResult r;
  r.pass = true;
  double worst_round = 0.0;
  for (double a : {1.0, 3.0}) {
    const double m = minkowski_margin(weyl_embed(round_metric(a, n_theta)));
    worst_round = std::max(worst_round, std::abs(m));
    if (std::abs(m) > 1e-9) r.pass = false;
  }
  double worst_rel = 0.0;
  for (auto [a, c] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.0}}) {
    const double m = minkowski_margin(weyl_embed(ellipsoid_metric(a, c, n_theta)));
    const double oracle = minkowski_margin(weyl_embed(ellipsoid_metric(a, c, 4 * n_theta)));
    if (!(m > 0.0) || !(oracle > 0.0)) r.pass = false;
    const double rel = std::abs(m - oracle) / oracle;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-3) r.pass = false;
  }
  r.summary = fmt("round |margin| <= %.3e; ellipsoid margin vs 4x oracle rel diff %.3e",
                  worst_round, worst_rel);
  return r;
}

SuiteResult suite_gauss_bonnet(int n_theta) {
  SuiteResult r;
  r.pass = true;
  double worst = 0.0;
  auto total_curvature = [&](const AxisymMetric& m) {
    std::vector<double> K = gauss_curvature(m);
    std::vector<double> J(m.grid.size());
    for (int i = 0; i < m.grid.size(); ++i) J[i] = std::sqrt(m.Atheta[i] * m.Btheta[i]);
    return surface_integral_corrected(m.grid, K, J);
  };
  for (const AxisymMetric& m : {round_metric(1.7, n_theta), ellipsoid_metric(1.0, 2.0, n_theta),
                                ellipsoid_metric(2.0, 1.0, n_theta)}) {
    worst = std::max(worst, std::abs(total_curvature(m) - 4.0 * kPi));
  }
  r.pass = worst <= 1e-4;
  r.summary = fmt("max |total curvature - 4 pi| = %.3e at n_theta = %g", worst,
                  double(n_theta));
  return r;
}

namespace {

struct ProfileCase {
  double order = 0.0;
  double mono_violation = 0.0;
  bool ok = false;
};

ProfileCase run_profile(std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + index);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  const int n_theta = 96;
  AxisymMetric base_metric = (index % 2 == 0)
                                 ? round_metric(1.0 + 2.0 * uni(rng), n_theta)
                                 : ellipsoid_metric(0.8 + 0.7 * uni(rng),
                                                    (0.6 + 1.2 * uni(rng)) *
                                                        (0.8 + 0.7 * uni(rng)),
                                                    n_theta);
  ParallelFoliation fol(weyl_embed(base_metric));

  // positive lapse profile, smooth across the poles (polynomial in cos theta)
  std::vector<double> h0(n_theta);
  double a1 = 0.02 + 0.06 * uni(rng), a2 = 0.02 + 0.06 * uni(rng),
         a3 = 0.02 + 0.06 * uni(rng);
  if (uni(rng) < 0.5) a1 = -a1;
  if (uni(rng) < 0.5) a2 = -a2;
  if (uni(rng) < 0.5) a3 = -a3;
  const double shift = 0.1 * uni(rng);
  for (int i = 0; i < n_theta; ++i) {
    const double th = base_metric.grid.center(i);
    h0[i] = 1.0 + shift + a1 * std::cos(th) + a2 * std::cos(2.0 * th) +
            a3 * std::cos(3.0 * th);
  }

  const double span = 2.0 * fol.mean_radius();
  const int fine = 48;
  std::vector<double> radii(fine + 1);
  for (int k = 0; k <= fine; ++k) radii[k] = span * k / fine;

  Tolerances tol;
  tol.ode_rel_tol = 1e-12;
  tol.ode_abs_tol = 1e-14;
  FlowState flow = flow_solve(fol, h0, span, tol, radii);

  ProfileCase out;
  std::vector<double> m = mass_profile(fol, flow, 1.0);
  for (std::size_t k = 0; k + 1 < m.size(); ++k) {
    out.mono_violation = std::max(out.mono_violation, m[k + 1] - m[k]);
  }

  FlowState coarse;
  coarse.mode = flow.mode;
  for (std::size_t k = 0; k < flow.r.size(); k += 2) {
    coarse.r.push_back(flow.r[k]);
    coarse.h.push_back(flow.h[k]);
  }
  const double d_fine = monotonicity_check(fol, flow, 1.0);
  const double d_coarse = monotonicity_check(fol, coarse, 1.0);
  out.order = std::log2(d_coarse / d_fine);
  out.ok = (out.mono_violation <= 1e-9) && (out.order >= 1.9);
  return out;
}

}  // namespace

SuiteResult suite_mass_monotonicity(std::uint64_t seed, int n_profiles) {
  std::vector<ProfileCase> cases(n_profiles);
#ifdef QLM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int j = 0; j < n_profiles; ++j) cases[j] = run_profile(seed, j);

  SuiteResult r;
  r.pass = true;
  double min_order = 1e300, worst_mono = 0.0;
  for (const ProfileCase& c : cases) {
    min_order = std::min(min_order, c.order);
    worst_mono = std::max(worst_mono, c.mono_violation);
    if (!c.ok) r.pass = false;
  }
  r.summary = fmt("%g profiles: min observed order %.2f, worst monotonicity slip %.2e",
                  double(n_profiles), min_order, worst_mono);
  return r;
}

}  // namespace qlm
