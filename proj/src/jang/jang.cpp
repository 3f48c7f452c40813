//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file jang.cpp

#include "jang/jang.hpp"

#include <cmath>
#include <string>

#include "core/ops.hpp"

namespace qlm {

namespace {

//! Jang operator rows on the interior stencil; caller decides the end rows.
//! lam scales the extrinsic curvature (amplitude continuation).
void jang_rows(const SphericalDataSet& d, const Vec& f, double lam, Vec& out) {
  const RadialGrid& g = d.grid;
  const int n = g.intervals();
  const double ds = g.spacing();
  for (int i = 1; i < n; ++i) {
    const double s = g.node(i);
    const double A = d.A[i], dA = d.dA[i];
    const double fp = (f[i + 1] - f[i - 1]) / (2.0 * ds);
    const double fpp = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (ds * ds);
    const double q = fp / A;
    const double W2 = 1.0 + q * q;
    const double W = std::sqrt(W2);
    const double hess = fpp - (dA / A) * fp;
    out[i] = hess / (A * A * W2 * W) + 2.0 * fp / (s * A * A * W) -
             lam * (d.p_rad[i] / W2 + 2.0 * d.p_tan[i]);
  }
}

}  // namespace

RadialField jang_residual(const SphericalDataSet& data, const RadialField& f) {
  data.validate();
  assert_finite(f, "jang_residual f");
  if (!data.areal) throw DataError("jang_residual: areal gauge required");
  if (!(f.grid == data.grid)) throw ConfigError("jang_residual: grid mismatch");
  const RadialGrid& g = data.grid;
  const int n = g.intervals();
  const double ds = g.spacing();
  Vec out(n + 1);
  jang_rows(data, f.v, 1.0, out);
  if (data.is_ball()) {
    // even-parity center: J(0) = 3 f''(0) - p_rad - 2 p_tan with A(0)=1
    out[0] = 6.0 * (f[1] - f[0]) / (ds * ds) - data.p_rad[0] - 2.0 * data.p_tan[0];
  } else {
    // one-sided second-order stencils at the inner end
    const double fp = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * ds);
    const double fpp = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (ds * ds);
    const double A = data.A[0], q = fp / A, W2 = 1.0 + q * q, W = std::sqrt(W2);
    out[0] = (fpp - (data.dA[0] / A) * fp) / (A * A * W2 * W) +
             2.0 * fp / (g.s_min() * A * A * W) - data.p_rad[0] / W2 - 2.0 * data.p_tan[0];
  }
  {
    const double fp = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * ds);
    const double fpp = (2.0 * f[n] - 5.0 * f[n - 1] + 4.0 * f[n - 2] - f[n - 3]) / (ds * ds);
    const double A = data.A[n], q = fp / A, W2 = 1.0 + q * q, W = std::sqrt(W2);
    out[n] = (fpp - (data.dA[n] / A) * fp) / (A * A * W2 * W) +
             2.0 * fp / (g.s_max() * A * A * W) - data.p_rad[n] / W2 - 2.0 * data.p_tan[n];
  }
  return RadialField(g, std::move(out));
}

JangSolution jang_solve(const SphericalDataSet& data, const Tolerances& tol) {
  data.validate();
  tol.validate();
  if (!data.areal) throw DataError("jang_solve: areal gauge required");
  if (!horizon_scan(data).empty()) {
    throw DataError("jang_solve: data set has an apparent horizon; the Dirichlet problem "
                    "is not solvable");
  }
  const RadialGrid& g = data.grid;
  const int n = g.intervals();
  const double ds = g.spacing();
  const bool ball = data.is_ball();

  auto system = [&](double lam) {
    return [&, lam](const Vec& f) {
      Vec out(n + 1);
      jang_rows(data, f, lam, out);
      if (ball) {
        out[0] = 6.0 * (f[1] - f[0]) / (ds * ds) -
                 lam * (data.p_rad[0] + 2.0 * data.p_tan[0]);
      } else {
        out[0] = f[0];
      }
      out[n] = f[n];
      return out;
    };
  };

  NewtonOptions opt;
  opt.tol = tol.newton_tol;
  Vec f(n + 1, 0.0);
  try {
    f = damped_newton_tridiagonal(system(1.0), f, opt);
  } catch (const NonconvergenceError&) {
    // homotopy in the extrinsic-curvature amplitude, warm-started
    f.assign(n + 1, 0.0);
    for (int k = 1; k <= 10; ++k) {
      const double lam = k / 10.0;
      try {
        f = damped_newton_tridiagonal(system(lam), f, opt);
      } catch (const NonconvergenceError& e) {
        throw NonconvergenceError("jang_solve: breakdown at continuation amplitude " +
                                  std::to_string(lam) + ": " + e.what());
      }
    }
  }

  RadialField ff(g, std::move(f));
  RadialField fp = derivative(ff);
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double q = fp[i] / data.A[i];
    w[i] = std::sqrt(1.0 + q * q);
  }
  return {std::move(ff), std::move(fp), RadialField(g, std::move(w))};
}

GraphData graph_geometry(const SphericalDataSet& data, const JangSolution& sol) {
  data.validate();
  if (!data.areal) throw DataError("graph_geometry: areal gauge required");
  const RadialGrid& g = data.grid;
  const int n = g.intervals();

  std::vector<double> q(n + 1), abar(n + 1);
  for (int i = 0; i <= n; ++i) {
    q[i] = sol.fprime[i] / data.A[i];
    abar[i] = data.A[i] * sol.W[i];  // Abar^2 = A^2 + f'^2
  }
  RadialField qf(g, std::move(q));
  RadialField dq = derivative(qf);
  RadialField Abar(g, std::move(abar));

  std::vector<double> dabar(n + 1), x(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double W = sol.W[i];
    dabar[i] = data.dA[i] * W + data.A[i] * qf[i] * dq[i] / W;
    // turning of the graph normal minus the extended extrinsic curvature
    x[i] = qf[i] * dq[i] / (data.A[i] * W * W * W) - qf[i] * data.p_rad[i] / (W * W);
  }
  RadialField dAbar(g, std::move(dabar));
  RadialField X(g, std::move(x));
  RadialField dX = derivative(X);

  RadialField B = RadialField::sample(g, [](double s) { return s; });
  RadialField Rbar = radial_scalar_curvature(g, Abar, dAbar, B, RadialField(g, 1.0),
                                             RadialField(g, 0.0));

  std::vector<double> divx(n + 1);
  const int i0 = data.is_ball() ? 1 : 0;
  for (int i = i0; i <= n; ++i) divx[i] = (dX[i] + 2.0 * X[i] / g.node(i)) / Abar[i];
  if (i0 == 1) divx[0] = 3.0 * dX[0] / Abar[0];  // X odd at a regular center

  const double Hbar = 2.0 / (g.s_max() * Abar[n]);
  const double Xnu = X[n];
  return {std::move(Abar), std::move(dAbar), std::move(Rbar), std::move(X),
          RadialField(g, std::move(divx)), Hbar, Xnu};
}

RadialField graph_curvature_margin(const GraphData& gd) {
  const int np = gd.Rbar.size();
  std::vector<double> m(np);
  for (int i = 0; i < np; ++i) {
    m[i] = gd.Rbar[i] - 2.0 * gd.X_rad[i] * gd.X_rad[i] + 2.0 * gd.divX[i];
  }
  return RadialField(gd.Rbar.grid, std::move(m));
}

}  // namespace qlm
