//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file conformal.cpp

#include "conformal/conformal.hpp"

#include <cmath>
#include <string>

#include "core/ops.hpp"

namespace qlm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ConformalSolution solve_conformal(const GraphData& gd, const Tolerances& tol) {
  tol.validate();
  const RadialGrid& g = gd.Abar.grid;
  const int n = g.intervals();
  const double ds = g.spacing();
  const bool ball = (g.s_min() == 0.0);

  const double hypothesis = graph_curvature_margin(gd).min();
  if (hypothesis < -tol.ineq_slack) {
    throw ViolationError("solve_conformal: curvature dominance hypothesis fails, margin " +
                         std::to_string(hypothesis));
  }

  Vec lower(n, 0.0), diag(n + 1, 0.0), upper(n, 0.0), rhs(n + 1, 0.0);
  for (int i = 1; i < n; ++i) {
    const double s = g.node(i);
    const double Ab = gd.Abar[i], dAb = gd.dAbar[i], R = gd.Rbar[i];
    const double c2 = 1.0 / (Ab * Ab * ds * ds);
    const double beta = (2.0 / (s * Ab * Ab) - dAb / (Ab * Ab * Ab)) / (2.0 * ds);
    lower[i - 1] = c2 - beta;
    diag[i] = -2.0 * c2 - R / 8.0;
    upper[i] = c2 + beta;
    rhs[i] = R / 8.0;
  }
  if (ball) {
    // even parity at the center: Lap v(0) = 3 v''(0), Abar(0) = 1
    diag[0] = -6.0 / (ds * ds) - gd.Rbar[0] / 8.0;
    upper[0] = 6.0 / (ds * ds);
    rhs[0] = gd.Rbar[0] / 8.0;
  } else {
    diag[0] = 1.0;
    upper[0] = 0.0;
    rhs[0] = 0.0;
  }
  diag[n] = 1.0;
  lower[n - 1] = 0.0;
  rhs[n] = 0.0;

  Vec v = solve_tridiagonal(lower, diag, upper, rhs);

  std::vector<double> u(n + 1);
  double umin = 1e300;
  for (int i = 0; i <= n; ++i) {
    u[i] = 1.0 + v[i];
    umin = std::min(umin, u[i]);
  }
  if (!(umin > 0.0)) {
    throw ViolationError("solve_conformal: conformal factor lost positivity (min u = " +
                         std::to_string(umin) + ")");
  }

  const double nu_u = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * ds) / gd.Abar[n];
  ConformalSolution cs{RadialField(g, std::move(v)), RadialField(g, std::move(u)), nu_u,
                       gd.Hbar + 4.0 * nu_u};
  return cs;
}

double conformal_boundary_margin(const GraphData& gd, const ConformalSolution& cs) {
  const double s_out = gd.Abar.grid.s_max();
  const double area = 4.0 * kPi * s_out * s_out;
  return area * (cs.Hhat - gd.Hbar + gd.Xnu);
}

}  // namespace qlm
