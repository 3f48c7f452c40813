//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file jang.hpp
//  \brief Jang's quasilinear equation in spherical symmetry, the graph metric it
//         induces, and the curvature dominance inequality of the deformed metric
//
// For radial f on g = A^2 ds^2 + s^2 dOmega^2, with q = f'/A and W = sqrt(1+q^2),
// the Jang operator reads
//     J(f) = f_;ss / (A^2 W^3) + 2 f' / (s A^2 W) - p_rad / W^2 - 2 p_tan,
//     f_;ss = f'' - (A'/A) f'.
// The graph of a solution in the Riemannian product carries the metric
// gbar = (A W)^2 ds^2 + s^2 dOmega^2 and the radial field
//     X = (q q' / (A W^3) - q p_rad / W^2) ebar_1,
// assembled from the turning rate of the downward graph normal minus the parallelly
// extended extrinsic curvature.

#ifndef QLM_JANG_JANG_HPP_
#define QLM_JANG_JANG_HPP_

#include "core/grid.hpp"
#include "data/initial_data.hpp"

namespace qlm {

struct JangSolution {
  RadialField f;       // graph height, zero on the outer boundary
  RadialField fprime;
  RadialField W;       // graph tilt factor, >= 1
};

struct GraphData {
  RadialField Abar;    // radial coefficient of the graph metric, Abar = A W
  RadialField dAbar;
  RadialField Rbar;    // scalar curvature of the graph metric
  RadialField X_rad;   // orthonormal radial component of X
  RadialField divX;    // graph-metric divergence of X
  double Hbar;         // outer-boundary mean curvature of the graph metric
  double Xnu;          // <X, outward unit normal> on the outer boundary
};

//! Pointwise Jang operator applied to f (one-sided stencils at the ends, even-parity
//! limit at a regular center). Zero for p = 0, f = 0.
RadialField jang_residual(const SphericalDataSet& data, const RadialField& f);

//! Damped-Newton solution with zero Dirichlet data on the outer boundary (and the
//! inner sphere of an annulus); a ball center imposes even parity. Requires areal
//! gauge and an empty horizon scan. Falls back to amplitude continuation in p before
//! reporting breakdown.
JangSolution jang_solve(const SphericalDataSet& data, const Tolerances& tol);

//! Graph metric, its scalar curvature, and the field X of a (candidate) solution.
GraphData graph_geometry(const SphericalDataSet& data, const JangSolution& sol);

//! Pointwise margin Rbar - 2|X|^2 + 2 div X; nonnegative (up to slack) for actual
//! Jang solutions of data obeying the local energy condition.
RadialField graph_curvature_margin(const GraphData& gd);

}  // namespace qlm

#endif  // QLM_JANG_JANG_HPP_
