//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file energy.cpp

#include "mass/energy.hpp"

#include <cmath>
#include <string>

#ifdef QLM_HAVE_OPENMP
#include <omp.h>
#endif

namespace qlm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double energy(const BoundaryGeometry& bg, double H0_integral, double ref_area, double G) {
  if (!(G > 0)) throw ConfigError("energy: G must be positive");
  return (H0_integral - bg.sqrt8rhomu * ref_area) / (8.0 * kPi * G);
}

double schwarzschild_mass(double M, double r, double G) {
  if (!(G > 0)) throw ConfigError("schwarzschild_mass: G must be positive");
  if (!(r >= 2.0 * M)) {
    throw ConfigError("schwarzschild_mass: r must be at least 2M");
  }
  return r * (1.0 - std::sqrt(1.0 - 2.0 * M / r)) / G;
}

double boundary_dominance_margin(const BoundaryDominanceSample& s) {
  if (!(s.H > 0)) throw ConfigError("boundary_dominance_margin: H must be positive");
  if (!(s.c3 > 0) || !(s.c3 <= 1.0)) {
    throw ConfigError("boundary_dominance_margin: c3 must lie in (0, 1]");
  }
  if (std::abs(s.P) <= s.H) {
    const double root = std::sqrt((s.H - s.P) * (s.H + s.P));
    const double num = (s.P - s.c4 * s.H) * (s.P - s.c4 * s.H);
    const double den = s.c3 * ((s.H - s.c4 * s.P) + s.c3 * root);
    return num / den;
  }
  // timelike mean curvature direction: the right side clamps to zero
  return (-s.c4 * s.P + s.H) / s.c3;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double u01(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

}  // namespace

BoundaryDominanceSample dominance_sample(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t key = splitmix64(seed ^ (index * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL));
  const double uH = u01(splitmix64(key + 1));
  const double ut = u01(splitmix64(key + 2));
  const double uc = u01(splitmix64(key + 3));
  const bool flip = (splitmix64(key + 4) & 1ULL) != 0;

  const double H = std::exp(std::log(0.1) + uH * (std::log(10.0) - std::log(0.1)));
  double t = -1.0 + 2.0 * ut;
  double c3 = uc;
  const std::uint64_t stratum = index % 100;
  if (stratum < 9) {
    // boundary strata: c3 in {1e-6, 1, random} x P in {-H, 0, +H}
    const int ci = static_cast<int>(stratum / 3), ti = static_cast<int>(stratum % 3);
    c3 = (ci == 0) ? 1e-6 : (ci == 1 ? 1.0 : uc);
    t = (ti == 0) ? -1.0 : (ti == 1 ? 0.0 : 1.0);
  }
  if (!(c3 > 0.0)) c3 = 0.5;  // u01 can return 0; keep c3 in (0, 1]
  const double c4 = (flip ? -1.0 : 1.0) * std::sqrt((1.0 - c3) * (1.0 + c3));
  return {H, t * H, c3, c4};
}

DominanceScan boundary_dominance_scan_serial(std::uint64_t seed, std::uint64_t n_samples) {
  DominanceScan out;
  out.count = n_samples;
  out.min_margin = 1e300;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const BoundaryDominanceSample s = dominance_sample(seed, i);
    const double m = boundary_dominance_margin(s);
    if (m < out.min_margin) {
      out.min_margin = m;
      out.argmin = s;
    }
  }
  return out;
}

DominanceScan boundary_dominance_scan(std::uint64_t seed, std::uint64_t n_samples) {
#ifndef QLM_HAVE_OPENMP
  return boundary_dominance_scan_serial(seed, n_samples);
#else
  DominanceScan out;
  out.count = n_samples;
  out.min_margin = 1e300;
  std::uint64_t arg = 0;
#pragma omp parallel
  {
    double local_min = 1e300;
    std::uint64_t local_arg = 0;
    const std::int64_t nn = static_cast<std::int64_t>(n_samples);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < nn; ++i) {
      const BoundaryDominanceSample s = dominance_sample(seed, static_cast<std::uint64_t>(i));
      const double m = boundary_dominance_margin(s);
      // tie-break on the lower index so the scan is order-independent
      if (m < local_min || (m == local_min && static_cast<std::uint64_t>(i) < local_arg)) {
        local_min = m;
        local_arg = static_cast<std::uint64_t>(i);
      }
    }
#pragma omp critical
    {
      if (local_min < out.min_margin ||
          (local_min == out.min_margin && local_arg < arg)) {
        out.min_margin = local_min;
        arg = local_arg;
      }
    }
  }
  out.argmin = dominance_sample(seed, arg);
  return out;
#endif
}

double horizon_energy_bound(const ProfileEmbedding& e, double G) {
  if (!(G > 0)) throw ConfigError("horizon_energy_bound: G must be positive");
  return minkowski_margin(e) / (8.0 * kPi * G);
}

}  // namespace qlm
