//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file ops.hpp
//  \brief shared 1-D numerics: differences, quadrature, linear solves, ODE, Newton

#ifndef QLM_CORE_OPS_HPP_
#define QLM_CORE_OPS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "core/grid.hpp"

namespace qlm {

using Vec = std::vector<double>;

//! Second-order derivative: central stencil inside, one-sided 3-point at the ends.
//! Exact on quadratics everywhere.
RadialField derivative(const RadialField& f);

//! Composite Simpson quadrature over the full grid; requires an even interval count.
double integrate(const RadialField& f);

//! Thomas solve of a tridiagonal system. lower/upper have size n-1, diag/rhs size n.
//! Enforces the residual contract ||Ax-b||_inf <= 1e-12 ||b||_inf.
Vec solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                      std::span<const double> upper, std::span<const double> rhs);

//! Dense Gaussian elimination with partial pivoting (small systems only).
Vec solve_dense(std::vector<Vec> a, Vec b);

//! Trajectory of an adaptive embedded Runge-Kutta 5(4) integration.
struct OdeTrajectory {
  Vec r;
  std::vector<Vec> y;
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;
};

using OdeRhs = std::function<void(double r, std::span<const double> y, std::span<double> dydr)>;
//! Called after every accepted step and at stored points; may throw to abort.
using OdeObserver = std::function<void(double r, std::span<const double> y)>;

//! Integrate y' = rhs(r, y) from r0 to r1 (r1 > r0).
//! If store_at is nonempty (strictly increasing, inside [r0, r1]) the trajectory holds
//! exactly those radii, hit by step clamping; otherwise every accepted step is stored.
//! Throws FlowBreakdownError on step-size underflow.
OdeTrajectory integrate_ode(const OdeRhs& rhs, Vec y0, double r0, double r1,
                            const Tolerances& tol, std::span<const double> store_at = {},
                            const OdeObserver& observer = {});

struct NewtonOptions {
  double tol = 1e-11;       // residual sup-norm target
  int max_iter = 60;
  int max_backtracks = 40;  // step halvings per iteration
  // called once per iteration with the current residual sup-norm (diagnostics)
  std::function<void(int iter, double residual_norm)> monitor;
};

//! Damped Newton with a user Jacobian (dense). Backtracking halves the update
//! until the residual sup-norm decreases.
Vec damped_newton(const std::function<Vec(const Vec&)>& residual,
                  const std::function<std::vector<Vec>(const Vec&)>& jacobian, Vec x0,
                  const NewtonOptions& opt);

//! Damped Newton for residuals with tridiagonal coupling (node i touches i-1, i, i+1).
//! The Jacobian is assembled by finite-difference columns over a 3-coloring,
//! with per-column step 1e-7 (1 + |x_j|), and solved by the Thomas algorithm.
Vec damped_newton_tridiagonal(const std::function<Vec(const Vec&)>& residual, Vec x0,
                              const NewtonOptions& opt);

}  // namespace qlm

#endif  // QLM_CORE_OPS_HPP_
