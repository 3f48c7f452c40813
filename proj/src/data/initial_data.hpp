//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file initial_data.hpp
//  \brief spherically symmetric initial data sets, constraint densities, horizon scan,
//         and outer-boundary geometry
//
// The metric is g = A(s)^2 ds^2 + B(s)^2 dOmega^2 with B = s (areal gauge) for every
// data set that feeds the deformation pipeline; a general positive B is supported so
// that slices handed over in other radial gauges (e.g. the conformally flat gauge,
// where minimal-surface throats sit at interior coordinate radii) can be scanned and
// compared at equal areal radius. The extrinsic curvature is diagonal in the
// orthonormal frame with eigenvalues (p_rad, p_tan, p_tan).

#ifndef QLM_DATA_INITIAL_DATA_HPP_
#define QLM_DATA_INITIAL_DATA_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/grid.hpp"

namespace qlm {

struct SphericalDataSet {
  RadialGrid grid;
  RadialField A, B, p_rad, p_tan;
  // radial derivatives: sampled from closed forms by the preset constructors,
  // second-order finite differences when the fields come in as raw samples
  RadialField dA, dB, d2B, dp_rad, dp_tan;
  double G = 1.0;
  bool areal = true;  // B(s) == s at every node

  // provenance for reports and digests; empty preset means explicit fields
  std::string preset;
  std::vector<std::pair<std::string, double>> preset_params;

  bool is_ball() const { return grid.s_min() == 0.0; }
  void validate() const;
};

struct ConstraintDensities {
  RadialField mu;     // local mass density
  RadialField J_rad;  // orthonormal radial component of the current density
};

struct BoundaryGeometry {
  double s_b;          // outer coordinate radius
  double areal_radius; // B(s_b); equals s_b in the areal gauge
  double H;            // mean curvature of {s = s_b} w.r.t. the outward normal
  double P;            // trace of p restricted to the boundary sphere
  double H0;           // Euclidean mean curvature of the round isometric image
  double area;         // 4 pi B(s_b)^2
  double sqrt8rhomu;   // sqrt(H^2 - P^2), the norm of the mean curvature vector
};

//! Scalar curvature of A^2 ds^2 + B^2 dOmega^2 from sampled fields and derivatives.
//! A ball center (s=0) requires the areal gauge with A(0)=1, A'(0)=0; the center
//! value is the even-parity limit 6 A''(0).
RadialField radial_scalar_curvature(const RadialGrid& grid, const RadialField& A,
                                    const RadialField& dA, const RadialField& B,
                                    const RadialField& dB, const RadialField& d2B);

//! Hamiltonian and momentum constraint densities of the data set.
ConstraintDensities constraint_densities(const SphericalDataSet& data);

//! Pointwise mu - |J|; the local energy condition holds iff min >= -ineq_slack.
RadialField energy_condition_margin(const ConstraintDensities& d);

struct HorizonRoot {
  double radius;
  int sign;  // +1: root of H_s + P_s, -1: root of H_s - P_s
};

//! All roots of H_s +- P_s over coordinate spheres, located by sign change and
//! bisection of a cubic interpolant. Empty result means no marginal sphere.
std::vector<HorizonRoot> horizon_scan(const SphericalDataSet& data);

//! Geometry of the outer boundary sphere. Throws DataError unless H > |P|
//! (spacelike mean curvature vector with outward-positive H).
BoundaryGeometry boundary_geometry(const SphericalDataSet& data);

// ---- preset constructors -------------------------------------------------------------

//! t=const slice of the Schwarzschild solution in the areal gauge; needs s_in > 2M.
SphericalDataSet schwarzschild_data(double M, double s_in, double s_out, int n, double G = 1.0);

//! The same slice in the conformally flat radial gauge A = (1+M/2s)^2, B = s A;
//! covers the minimal-surface throat at s = M/2. Needs s_in > 0.
SphericalDataSet isotropic_schwarzschild(double M, double s_in, double s_out, int n,
                                         double G = 1.0);

//! Euclidean data, p = 0.
SphericalDataSet flat_data(double s_in, double s_out, int n, double G = 1.0);

//! Seeded smooth compactly supported bumps in the mass profile and in p, rescaled by
//! halving until the energy condition holds pointwise and no marginal sphere exists.
//! Throws DataError if 60 halvings cannot achieve that.
SphericalDataSet perturbed_data(std::uint64_t seed, double amplitude, double s_out = 1.0,
                                int n = 800, double G = 1.0);

//! Data set from explicit field samples (derivatives by finite differences).
SphericalDataSet dataset_from_fields(const RadialGrid& grid, std::vector<double> A,
                                     std::vector<double> p_rad, std::vector<double> p_tan,
                                     double G = 1.0, std::vector<double> B = {});

}  // namespace qlm

#endif  // QLM_DATA_INITIAL_DATA_HPP_
