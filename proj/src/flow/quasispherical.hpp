//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file quasispherical.hpp
//  \brief the quasi-spherical lapse flow on an exterior foliation, its mass aspect,
//         monotonicity cross-check, and asymptotic fits
//
// The lapse h of the scalar-flat exterior metric h^2 dr^2 + g_r obeys
//     2 H0_r dh/dr = 2 h^2 Lap_r h + (h - h^3) R^r,
// integrated here by method of lines in theta with adaptive Runge-Kutta in r.
// The mass aspect
//     m(r) = (1/8 pi G) int (H0 - h^{-1} H0) dsigma_r
// is non-increasing:  dm/dr = -(1/16 pi G) int R^r h^{-1} (1-h)^2 dsigma_r <= 0,
// and its limit is the ADM mass of the constructed end.

#ifndef QLM_FLOW_QUASISPHERICAL_HPP_
#define QLM_FLOW_QUASISPHERICAL_HPP_

#include <span>
#include <vector>

#include "core/grid.hpp"
#include "flow/foliation.hpp"

namespace qlm {

//! which initial lapse seeded the flow
enum class FlowSeed { riemannian, general };

struct FlowState {
  std::vector<double> r;                // stored radii, r[0] = 0
  std::vector<std::vector<double>> h;   // one lapse row per stored radius
  FlowSeed mode = FlowSeed::riemannian;
  std::size_t rk_steps = 0;
};

//! workspace for the method-of-lines right side (one per integration thread)
struct FlowWorkspace {
  FoliationSlice slice;
  std::vector<double> lap, flux;
};

//! right side of the lapse equation; serial reference kernel
void flow_rhs_serial(const ParallelFoliation& fol, double r, std::span<const double> h,
                     std::span<double> out, FlowWorkspace& ws);

//! identical arithmetic with OpenMP-threaded pointwise loops; bit-identical results
void flow_rhs_parallel(const ParallelFoliation& fol, double r, std::span<const double> h,
                       std::span<double> out, FlowWorkspace& ws);

//! geometric (log-stretched) storage radii for [0, r_max] anchored at the base scale
std::vector<double> geometric_radii(double base_radius, double r_max, int count);

//! Integrate the flow from h0 > 0, storing the lapse at store_at (which must start
//! at 0). Throws FlowBreakdownError if h stops being positive or the stepper stalls.
//! `threaded` enables the OpenMP kernel for wide grids.
FlowState flow_solve(const ParallelFoliation& fol, std::vector<double> h0, double r_max,
                     const Tolerances& tol, std::span<const double> store_at,
                     FlowSeed mode = FlowSeed::riemannian, bool threaded = false);

//! m(r) at one stored row (midpoint quadrature, dual to the discrete Laplacian)
double mass_at(const ParallelFoliation& fol, double r, std::span<const double> h, double G);

//! right side of the mass-aspect monotonicity identity at one stored row
double mass_rate_at(const ParallelFoliation& fol, double r, std::span<const double> h,
                    double G);

//! m(r) along the whole stored trajectory
std::vector<double> mass_profile(const ParallelFoliation& fol, const FlowState& flow,
                                 double G);

struct MassAspect {
  std::vector<double> r, m;
  double m0 = 0.0;           // m at r = 0
  double m_o = 0.0;          // 1/rho coefficient of the lapse tail
  double m_inf = 0.0;        // extrapolated limit of m(r), linear model in 1/r
  double m_inf_quad = 0.0;   // quadratic-model cross-check
  double kappa_bound = 0.0;  // sup over the tail of rho^2 |h - 1 - m_o/rho|
  bool fits_consistent = false;  // the two extrapolations agree to 1e-3 relative
  bool mo_matches_minf = false;  // m_o ~ G m_inf
};

//! Mass aspect with tail fits. Requires r_max >= 50 * (base mean radius) and at
//! least 20 stored tail samples; throws NonconvergenceError if m(r) fails to be
//! non-increasing within 1e-9 (an integration-accuracy failure).
MassAspect mass_aspect(const ParallelFoliation& fol, const FlowState& flow, double G);

//! max_k | centered dm/dr - identity right side | over interior stored radii;
//! also asserts the right side is nonpositive everywhere.
double monotonicity_check(const ParallelFoliation& fol, const FlowState& flow, double G);

struct Asymptotics {
  double m_o = 0.0;
  double kappa_bound = 0.0;
  bool kappa_stable = false;  // bound non-increasing over the last decade within 20%
};

//! lapse-tail fit h = 1 + m_o/rho + O(rho^-2) and the remainder bound
Asymptotics asymptotics_check(const ParallelFoliation& fol, const FlowState& flow);

}  // namespace qlm

#endif  // QLM_FLOW_QUASISPHERICAL_HPP_
