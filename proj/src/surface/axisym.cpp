//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file axisym.cpp

#include "surface/axisym.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/grid.hpp"
#include "core/ops.hpp"

namespace qlm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ThetaGrid::ThetaGrid(int n_cells) : n_(n_cells) {
  if (n_cells < 64) {
    throw ConfigError("ThetaGrid: need at least 64 cells, got " + std::to_string(n_cells));
  }
  dth_ = kPi / n_cells;
}

namespace {

//! mirrored sample with parity sign; index may run 3 cells past either pole
inline double ghost(std::span<const double> f, int n, int i, Parity p) {
  double sign = 1.0;
  if (i < 0) {
    i = -1 - i;
    if (p == Parity::odd) sign = -1.0;
  } else if (i >= n) {
    i = 2 * n - 1 - i;
    if (p == Parity::odd) sign = -1.0;
  }
  return sign * f[i];
}

}  // namespace

std::vector<double> theta_derivative(const ThetaGrid& g, std::span<const double> f, Parity p) {
  const int n = g.size();
  std::vector<double> d(n);
  const double w = 1.0 / (60.0 * g.spacing());
  for (int i = 0; i < n; ++i) {
    const double fm3 = ghost(f, n, i - 3, p), fm2 = ghost(f, n, i - 2, p),
                 fm1 = ghost(f, n, i - 1, p), fp1 = ghost(f, n, i + 1, p),
                 fp2 = ghost(f, n, i + 2, p), fp3 = ghost(f, n, i + 3, p);
    d[i] = w * (-fm3 + 9.0 * fm2 - 45.0 * fm1 + 45.0 * fp1 - 9.0 * fp2 + fp3);
  }
  return d;
}

std::vector<double> to_faces(const ThetaGrid& g, std::span<const double> f, Parity p) {
  const int n = g.size();
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (p == Parity::odd && (k == 0 || k == n)) {
      out[k] = 0.0;  // odd fields vanish on the axis
      continue;
    }
    const double fm2 = ghost(f, n, k - 2, p), fm1 = ghost(f, n, k - 1, p),
                 fp0 = ghost(f, n, k, p), fp1 = ghost(f, n, k + 1, p);
    out[k] = (-fm2 + 9.0 * fm1 + 9.0 * fp0 - fp1) / 16.0;
  }
  return out;
}

void AxisymMetric::validate() const {
  const int n = grid.size();
  if (static_cast<int>(Atheta.size()) != n || static_cast<int>(Btheta.size()) != n) {
    throw ConfigError("AxisymMetric: field sizes do not match the grid");
  }
  assert_finite(Atheta, "Atheta");
  assert_finite(Btheta, "Btheta");
  for (int i = 0; i < n; ++i) {
    if (!(Atheta[i] > 0) || !(Btheta[i] > 0)) {
      throw DataError("AxisymMetric: coefficients must be positive away from the poles");
    }
  }
  // pole regularity: B/theta^2 -> A at theta -> 0, mirrored at pi
  auto check_pole = [&](double th0, double th1, double B0, double B1, double A0) {
    const double r0 = B0 / (th0 * th0), r1 = B1 / (th1 * th1);
    const double lim = r0 + (r0 - r1) * th0 * th0 / (th1 * th1 - th0 * th0);
    if (std::abs(lim - A0) > 0.2 * A0) {
      throw DataError("AxisymMetric: pole regularity B ~ A(0) theta^2 fails");
    }
  };
  check_pole(grid.center(0), grid.center(1), Btheta[0], Btheta[1], Atheta[0]);
  check_pole(kPi - grid.center(n - 1), kPi - grid.center(n - 2), Btheta[n - 1], Btheta[n - 2],
             Atheta[n - 1]);
}

std::vector<double> gauss_curvature(const AxisymMetric& m) {
  m.validate();
  const int n = m.grid.size();
  std::vector<double> J(n), t(n);
  std::vector<double> dB = theta_derivative(m.grid, m.Btheta, Parity::even);
  for (int i = 0; i < n; ++i) {
    J[i] = std::sqrt(m.Atheta[i] * m.Btheta[i]);  // odd across the poles
    t[i] = dB[i] / J[i];                          // even
  }
  std::vector<double> dt = theta_derivative(m.grid, t, Parity::even);
  std::vector<double> K(n);
  for (int i = 0; i < n; ++i) K[i] = -dt[i] / (2.0 * J[i]);
  return K;
}

ProfileEmbedding weyl_embed(const AxisymMetric& m) {
  std::vector<double> K = gauss_curvature(m);
  const int n = m.grid.size();
  for (int i = 0; i < n; ++i) {
    if (!(K[i] > 0)) {
      throw DataError("weyl_embed: Gauss curvature is not positive at theta = " +
                      std::to_string(m.grid.center(i)));
    }
  }

  ProfileEmbedding e{m.grid, m.Atheta, m.Btheta, {}, {}, {}, {}, {}, {}, {}, {}, {}, {},
                     {}, {}, {}, {}, 0.0};
  e.rho.resize(n);
  for (int i = 0; i < n; ++i) e.rho[i] = std::sqrt(m.Btheta[i]);
  e.drho = theta_derivative(m.grid, e.rho, Parity::odd);

  e.zp.resize(n);
  for (int i = 0; i < n; ++i) {
    const double disc = m.Atheta[i] - e.drho[i] * e.drho[i];
    if (!(disc > 0)) {
      throw DataError("weyl_embed: A - (drho)^2 <= 0; metric is not realizable as a "
                      "surface of revolution about this axis");
    }
    e.zp[i] = std::sqrt(disc);
  }

  // principal curvatures of the profile (theta parametrization, L = sqrt(A))
  std::vector<double> d2rho = theta_derivative(m.grid, e.drho, Parity::even);
  std::vector<double> dzp = theta_derivative(m.grid, e.zp, Parity::odd);
  e.kappa1.resize(n);
  e.kappa2.resize(n);
  e.H0.resize(n);
  e.J.resize(n);
  for (int i = 0; i < n; ++i) {
    const double L32 = std::pow(m.Atheta[i], 1.5);
    e.kappa1[i] = (e.drho[i] * dzp[i] - e.zp[i] * d2rho[i]) / L32;
    e.kappa2[i] = e.zp[i] / (e.rho[i] * std::sqrt(m.Atheta[i]));
    if (!(e.kappa1[i] > 0) || !(e.kappa2[i] > 0)) {
      throw DataError("weyl_embed: embedding is not strictly convex at theta = " +
                      std::to_string(m.grid.center(i)));
    }
    e.H0[i] = e.kappa1[i] + e.kappa2[i];
    e.J[i] = std::sqrt(m.Atheta[i] * m.Btheta[i]);
  }

  // height by cumulative trapezoid of zp, then centered so the body straddles z = 0
  e.z.resize(n);
  const double dth = m.grid.spacing();
  e.z[0] = 0.5 * dth * e.zp[0];  // zp is odd: z'(0) = 0, so the half-cell uses zp/2
  for (int i = 1; i < n; ++i) e.z[i] = e.z[i - 1] + 0.5 * dth * (e.zp[i - 1] + e.zp[i]);
  const double z_lo = 0.0;
  const double z_hi = e.z[n - 1] + 0.5 * dth * e.zp[n - 1];
  const double shift = 0.5 * (z_lo + z_hi);
  for (int i = 0; i < n; ++i) e.z[i] -= shift;

  e.support.resize(n);
  e.radius2.resize(n);
  for (int i = 0; i < n; ++i) {
    const double L = std::sqrt(m.Atheta[i]);
    e.support[i] = (e.rho[i] * e.zp[i] - e.z[i] * e.drho[i]) / L;
    e.radius2[i] = e.rho[i] * e.rho[i] + e.z[i] * e.z[i];
    if (!(e.support[i] > 0)) {
      throw DataError("weyl_embed: centered origin is not enclosed (support <= 0)");
    }
  }

  e.rho_f = to_faces(m.grid, e.rho, Parity::odd);
  std::vector<double> L(n);
  for (int i = 0; i < n; ++i) L[i] = std::sqrt(m.Atheta[i]);
  e.L_f = to_faces(m.grid, L, Parity::even);
  e.k1_f = to_faces(m.grid, e.kappa1, Parity::even);
  e.k2_f = to_faces(m.grid, e.kappa2, Parity::even);

  e.area = surface_integral(m.grid, std::vector<double>(n, 1.0), e.J);
  return e;
}

double surface_integral(const ThetaGrid& g, std::span<const double> f,
                        std::span<const double> J) {
  double sum = 0.0;
  for (int i = 0; i < g.size(); ++i) sum += f[i] * J[i];
  return 2.0 * kPi * g.spacing() * sum;
}

namespace {

//! slope at the pole of F(theta) = f J (which vanishes there), from a cubic through
//! the pole and the three nearest cells
double pole_slope(double h, double F0, double F1, double F2) {
  std::vector<Vec> M = {{0.5, 0.25, 0.125}, {1.5, 2.25, 3.375}, {2.5, 6.25, 15.625}};
  Vec rhs = {F0, F1, F2};
  Vec d = solve_dense(M, rhs);
  return d[0] / h;
}

}  // namespace

double surface_integral_corrected(const ThetaGrid& g, std::span<const double> f,
                                  std::span<const double> J) {
  const int n = g.size();
  const double h = g.spacing();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f[i] * J[i];
  const double dF0 = pole_slope(h, f[0] * J[0], f[1] * J[1], f[2] * J[2]);
  const double dFn =
      -pole_slope(h, f[n - 1] * J[n - 1], f[n - 2] * J[n - 2], f[n - 3] * J[n - 3]);
  return 2.0 * kPi * (h * sum + h * h / 24.0 * (dFn - dF0));
}

double minkowski_margin(const ProfileEmbedding& e) {
  const double intH0 = surface_integral_corrected(e.grid, e.H0, e.J);
  std::vector<double> one(e.grid.size(), 1.0);
  const double area = surface_integral_corrected(e.grid, one, e.J);
  return intH0 - std::sqrt(16.0 * kPi * area);
}

AxisymMetric round_metric(double a, int n_cells) {
  if (!(a > 0)) throw ConfigError("round_metric: radius must be positive");
  ThetaGrid g(n_cells);
  AxisymMetric m{g, std::vector<double>(n_cells), std::vector<double>(n_cells)};
  for (int i = 0; i < n_cells; ++i) {
    const double sn = std::sin(g.center(i));
    m.Atheta[i] = a * a;
    m.Btheta[i] = a * a * sn * sn;
  }
  return m;
}

AxisymMetric ellipsoid_metric(double a, double c, int n_cells) {
  if (!(a > 0) || !(c > 0)) throw ConfigError("ellipsoid_metric: semi-axes must be positive");
  ThetaGrid g(n_cells);
  AxisymMetric m{g, std::vector<double>(n_cells), std::vector<double>(n_cells)};
  for (int i = 0; i < n_cells; ++i) {
    const double sn = std::sin(g.center(i)), cs = std::cos(g.center(i));
    m.Atheta[i] = a * a * cs * cs + c * c * sn * sn;
    m.Btheta[i] = a * a * sn * sn;
  }
  return m;
}

}  // namespace qlm
