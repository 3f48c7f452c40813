//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file energy.hpp
//  \brief quasi-local energy of a boundary sphere, the Schwarzschild closed form,
//         the unit-normal dominance inequality, and the horizon energy bound
//
// E(Sigma) = (1/8 pi G) int (H0 - sqrt(H^2 - P^2)) dsigma, where H0 is the mean
// curvature of the isometric image in Euclidean 3-space and sqrt(H^2 - P^2) the norm
// of the spacelike mean curvature vector.

#ifndef QLM_MASS_ENERGY_HPP_
#define QLM_MASS_ENERGY_HPP_

#include <cstdint>

#include "data/initial_data.hpp"
#include "surface/axisym.hpp"

namespace qlm {

//! E from a pre-integrated reference mean curvature. `ref_area` multiplies the
//! constant sqrt(H^2-P^2); pass the quadrature area of the same rule that produced
//! H0_integral so the two terms cancel consistently on near-round boundaries.
double energy(const BoundaryGeometry& bg, double H0_integral, double ref_area, double G);

//! closed-form quasi-local energy r (1 - sqrt(1 - 2M/r)) / G of a centered sphere in
//! the Schwarzschild slice; decreasing in r, value 2M at r = 2M, limit M at infinity.
double schwarzschild_mass(double M, double r, double G);

//! A sample of the boundary dominance inequality
//!     (-c4 P + H)/c3 >= sqrt(max(H^2 - P^2, 0)),
//! where (c3, c4) are the components of a unit vector (c3^2 + c4^2 = 1, c3 > 0).
struct BoundaryDominanceSample {
  double H;   // > 0
  double P;
  double c3;  // in (0, 1]
  double c4;  // sign * sqrt(1 - c3^2)
};

//! Margin of the inequality. For |P| <= H this is evaluated in the rearranged form
//!     (P - c4 H)^2 / (c3 (H - c4 P + c3 sqrt(H^2 - P^2))),
//! which is exactly nonnegative in floating point; the naive difference reappears
//! for |P| > H where the right side is clamped to zero.
double boundary_dominance_margin(const BoundaryDominanceSample& s);

struct DominanceScan {
  double min_margin = 0.0;
  BoundaryDominanceSample argmin{1.0, 0.0, 1.0, 0.0};
  std::uint64_t count = 0;
};

//! Seeded sweep of n samples with H log-uniform in [0.1, 10], P = t H with t uniform
//! in [-1, 1], and c3 uniform in (0, 1]; every block of 100 samples opens with the
//! nine boundary strata c3 in {1e-6, 1, random} x t in {-1, 0, 1}. Counter-based
//! sampling makes serial and threaded sweeps bit-identical.
DominanceScan boundary_dominance_scan(std::uint64_t seed, std::uint64_t n_samples);
DominanceScan boundary_dominance_scan_serial(std::uint64_t seed, std::uint64_t n_samples);

//! one sample by counter (exposed for the serial/threaded equivalence tests)
BoundaryDominanceSample dominance_sample(std::uint64_t seed, std::uint64_t index);

//! E - sqrt(Area/4 pi)/G for a convex embedding whose sphere has a null expansion
//! product of zero (horizon data): nonnegative by the Minkowski inequality, zero on
//! round spheres. Scales linearly under surface dilation.
double horizon_energy_bound(const ProfileEmbedding& e, double G);

}  // namespace qlm

#endif  // QLM_MASS_ENERGY_HPP_
