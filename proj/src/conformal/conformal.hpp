//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file conformal.hpp
//  \brief conformal deformation of the graph metric to zero scalar curvature
//
// ghat = u^4 gbar is scalar flat iff v = u - 1 solves the linear problem
//     Lap_gbar v - (Rbar/8) v = Rbar/8,   v = 0 on the outer boundary,
// with even parity at a ball center and Dirichlet zero on an annulus inner sphere.
// The boundary mean curvatures are related by Hhat = Hbar + 4 nu(u).

#ifndef QLM_CONFORMAL_CONFORMAL_HPP_
#define QLM_CONFORMAL_CONFORMAL_HPP_

#include "core/grid.hpp"
#include "jang/jang.hpp"

namespace qlm {

struct ConformalSolution {
  RadialField v;  // zero on the outer boundary
  RadialField u;  // 1 + v, certified positive
  double nu_u;    // outward normal derivative of u at the boundary, u'(s_out)/Abar
  double Hhat;    // Hbar + 4 nu_u
};

//! Solve the zero-scalar-curvature conformal problem on the graph metric.
//! Requires the curvature dominance margin of gd to be >= -slack (its hypothesis) and
//! certifies u > 0; tridiagonal second-order discretization, deterministic.
ConformalSolution solve_conformal(const GraphData& gd, const Tolerances& tol);

//! integral form of the boundary inequality: returns
//! int Hhat - int (Hbar - <X,nu>) = area * (4 nu_u + Xnu); >= -slack * area on
//! theorem-backed runs, zero exactly when Rbar = 0 and X = 0.
double conformal_boundary_margin(const GraphData& gd, const ConformalSolution& cs);

}  // namespace qlm

#endif  // QLM_CONFORMAL_CONFORMAL_HPP_
