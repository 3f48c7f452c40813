//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file quasispherical.cpp

#include "flow/quasispherical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/ops.hpp"

#ifdef QLM_HAVE_OPENMP
#include <omp.h>
#endif

namespace qlm {

namespace {
constexpr double kLapseFloor = 1e-8;
}

void flow_rhs_serial(const ParallelFoliation& fol, double r, std::span<const double> h,
                     std::span<double> out, FlowWorkspace& ws) {
  const int n = fol.grid().size();
  const double dth = fol.grid().spacing();
  fol.slice(r, ws.slice);
  ws.flux.resize(n + 1);
  ws.flux[0] = ws.flux[n] = 0.0;
  for (int k = 1; k < n; ++k) ws.flux[k] = ws.slice.P_f[k] * (h[k] - h[k - 1]) / dth;
  for (int i = 0; i < n; ++i) {
    const double lap = (ws.flux[i + 1] - ws.flux[i]) / (ws.slice.Jr[i] * dth);
    const double hh = h[i];
    out[i] = (2.0 * hh * hh * lap + (hh - hh * hh * hh) * ws.slice.Rr[i]) /
             (2.0 * ws.slice.H0r[i]);
  }
}

void flow_rhs_parallel(const ParallelFoliation& fol, double r, std::span<const double> h,
                       std::span<double> out, FlowWorkspace& ws) {
#ifndef QLM_HAVE_OPENMP
  flow_rhs_serial(fol, r, h, out, ws);
  (void)r;
#else
  const int n = fol.grid().size();
  const double dth = fol.grid().spacing();
  const ProfileEmbedding& base = fol.base();
  FoliationSlice& s = ws.slice;
  s.resize(n);
  s.r = r;
  ws.flux.resize(n + 1);
  ws.flux[0] = ws.flux[n] = 0.0;
#pragma omp parallel
  {
#pragma omp for schedule(static) nowait
    for (int i = 0; i < n; ++i) {
      const double e1 = 1.0 + r * base.kappa1[i];
      const double e2 = 1.0 + r * base.kappa2[i];
      const double k1r = base.kappa1[i] / e1;
      const double k2r = base.kappa2[i] / e2;
      s.H0r[i] = k1r + k2r;
      s.Rr[i] = 2.0 * k1r * k2r;
      s.Jr[i] = e1 * e2 * base.J[i];
    }
#pragma omp for schedule(static)
    for (int k = 1; k < n; ++k) {
      const double e1 = 1.0 + r * base.k1_f[k];
      const double e2 = 1.0 + r * base.k2_f[k];
      s.P_f[k] = base.rho_f[k] * e2 / (base.L_f[k] * e1);
    }
#pragma omp for schedule(static)
    for (int k = 1; k < n; ++k) ws.flux[k] = s.P_f[k] * (h[k] - h[k - 1]) / dth;
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double lap = (ws.flux[i + 1] - ws.flux[i]) / (s.Jr[i] * dth);
      const double hh = h[i];
      out[i] = (2.0 * hh * hh * lap + (hh - hh * hh * hh) * s.Rr[i]) / (2.0 * s.H0r[i]);
    }
  }
#endif
}

std::vector<double> geometric_radii(double base_radius, double r_max, int count) {
  if (!(base_radius > 0) || !(r_max > 0) || count < 2) {
    throw ConfigError("geometric_radii: bad arguments");
  }
  const double umax = std::log1p(r_max / base_radius);
  std::vector<double> r(count);
  for (int k = 0; k < count; ++k) r[k] = base_radius * std::expm1(umax * k / (count - 1));
  r.front() = 0.0;
  r.back() = r_max;
  return r;
}

FlowState flow_solve(const ParallelFoliation& fol, std::vector<double> h0, double r_max,
                     const Tolerances& tol, std::span<const double> store_at, FlowSeed mode,
                     bool threaded) {
  const int n = fol.grid().size();
  if (static_cast<int>(h0.size()) != n) throw ConfigError("flow_solve: h0 size mismatch");
  assert_finite(h0, "flow_solve h0");
  for (double v : h0) {
    if (!(v > 0)) throw DataError("flow_solve: initial lapse must be positive");
  }
  if (store_at.empty() || store_at.front() != 0.0) {
    throw ConfigError("flow_solve: storage radii must start at 0");
  }
  if (std::abs(store_at.back() - r_max) > 1e-12 * (1.0 + r_max)) {
    throw ConfigError("flow_solve: storage radii must end at r_max");
  }

  FlowWorkspace ws;
  auto rhs = [&](double r, std::span<const double> y, std::span<double> dy) {
    if (threaded) {
      flow_rhs_parallel(fol, r, y, dy, ws);
    } else {
      flow_rhs_serial(fol, r, y, dy, ws);
    }
  };
  auto observer = [&](double r, std::span<const double> y) {
    for (int i = 0; i < n; ++i) {
      if (!(y[i] > kLapseFloor)) {
        throw FlowBreakdownError("flow_solve: lapse collapsed to zero", r);
      }
    }
  };

  OdeTrajectory traj = integrate_ode(rhs, std::move(h0), 0.0, r_max, tol, store_at, observer);
  FlowState st;
  st.r = std::move(traj.r);
  st.h = std::move(traj.y);
  st.mode = mode;
  st.rk_steps = traj.n_accepted;
  return st;
}

double mass_at(const ParallelFoliation& fol, double r, std::span<const double> h, double G) {
  const int n = fol.grid().size();
  FoliationSlice s = fol.slice(r);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += s.H0r[i] * (1.0 - 1.0 / h[i]) * s.Jr[i];
  return fol.grid().spacing() / (4.0 * G) * sum;
}

double mass_rate_at(const ParallelFoliation& fol, double r, std::span<const double> h,
                    double G) {
  const int n = fol.grid().size();
  FoliationSlice s = fol.slice(r);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = 1.0 - h[i];
    sum += s.Rr[i] * d * d / h[i] * s.Jr[i];
  }
  return -fol.grid().spacing() / (8.0 * G) * sum;
}

std::vector<double> mass_profile(const ParallelFoliation& fol, const FlowState& flow,
                                 double G) {
  std::vector<double> m(flow.r.size());
  for (std::size_t k = 0; k < flow.r.size(); ++k) m[k] = mass_at(fol, flow.r[k], flow.h[k], G);
  return m;
}

namespace {

//! least squares of y = c0 + c1 x (+ c2 x^2); returns the coefficients
Vec poly_fit(const std::vector<double>& x, const std::vector<double>& y, int order) {
  const int m = order + 1;
  std::vector<Vec> ata(m, Vec(m, 0.0));
  Vec atb(m, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    double pw[3] = {1.0, x[k], x[k] * x[k]};
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) ata[i][j] += pw[i] * pw[j];
      atb[i] += pw[i] * y[k];
    }
  }
  return solve_dense(std::move(ata), std::move(atb));
}

//! Euclidean distance from the enclosed origin to the leaf point above cell i
double rho_dist(const ProfileEmbedding& base, int i, double r) {
  return std::sqrt(base.radius2[i] + 2.0 * r * base.support[i] + r * r);
}

struct TailFit {
  double m_o = 0.0;
  double kappa_bound = 0.0;
  bool kappa_stable = false;
  std::vector<std::size_t> rows;  // stored-row indices of the tail
};

TailFit lapse_tail_fit(const ParallelFoliation& fol, const FlowState& flow) {
  const ProfileEmbedding& base = fol.base();
  const int n = fol.grid().size();
  const double r_max = flow.r.back();
  TailFit out;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < flow.r.size(); ++k) {
    if (flow.r[k] < 0.5 * r_max) continue;
    out.rows.push_back(k);
    FoliationSlice s = fol.slice(flow.r[k]);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += (flow.h[k][i] - 1.0) * rho_dist(base, i, flow.r[k]) * s.Jr[i];
      den += s.Jr[i];
    }
    xs.push_back(1.0 / flow.r[k]);
    ys.push_back(num / den);
  }
  if (xs.size() < 20) {
    throw ConfigError("lapse tail fit: need at least 20 stored tail samples");
  }
  Vec c = poly_fit(xs, ys, 1);
  out.m_o = c[0];

  // remainder bound rho^2 |h - 1 - m_o/rho|, and its stability over the last decade
  double rho_end = 0.0;
  for (int i = 0; i < n; ++i) rho_end = std::max(rho_end, rho_dist(base, i, r_max));
  const double rho_lo = rho_end / 10.0, rho_mid = rho_end / std::sqrt(10.0);
  double bound_all = 0.0, bound_early = 0.0, bound_late = 0.0;
  for (std::size_t k : out.rows) {
    for (int i = 0; i < n; ++i) {
      const double rho = rho_dist(base, i, flow.r[k]);
      const double rem = rho * rho * std::abs(flow.h[k][i] - 1.0 - out.m_o / rho);
      bound_all = std::max(bound_all, rem);
      if (rho >= rho_lo && rho < rho_mid) bound_early = std::max(bound_early, rem);
      if (rho >= rho_mid) bound_late = std::max(bound_late, rem);
    }
  }
  out.kappa_bound = bound_all;
  out.kappa_stable = (bound_late <= 1.2 * bound_early + 1e-12);
  return out;
}

}  // namespace

MassAspect mass_aspect(const ParallelFoliation& fol, const FlowState& flow, double G) {
  if (!(G > 0)) throw ConfigError("mass_aspect: G must be positive");
  const double r_max = flow.r.back();
  if (r_max < 50.0 * fol.mean_radius()) {
    throw ConfigError("mass_aspect: r_max must reach 50x the base mean radius");
  }
  MassAspect out;
  out.r = flow.r;
  out.m = mass_profile(fol, flow, G);
  out.m0 = out.m.front();
  for (std::size_t k = 0; k + 1 < out.m.size(); ++k) {
    if (out.m[k + 1] > out.m[k] + 1e-9) {
      throw NonconvergenceError("mass_aspect: m(r) is not non-increasing at r = " +
                                std::to_string(out.r[k + 1]) +
                                "; integration accuracy failed");
    }
  }

  TailFit tf = lapse_tail_fit(fol, flow);
  out.m_o = tf.m_o;
  out.kappa_bound = tf.kappa_bound;

  std::vector<double> xs, ys;
  for (std::size_t k : tf.rows) {
    xs.push_back(1.0 / flow.r[k]);
    ys.push_back(out.m[k]);
  }
  out.m_inf = poly_fit(xs, ys, 1)[0];
  out.m_inf_quad = poly_fit(xs, ys, 2)[0];

  const double scale = std::max({std::abs(out.m_inf), std::abs(out.m_inf_quad)});
  out.fits_consistent = std::abs(out.m_inf - out.m_inf_quad) <= std::max(1e-3 * scale, 1e-9);
  const double mo_scale = std::max(std::abs(out.m_o), std::abs(G * out.m_inf));
  out.mo_matches_minf = std::abs(out.m_o - G * out.m_inf) <= std::max(1e-3 * mo_scale, 1e-6);
  return out;
}

double monotonicity_check(const ParallelFoliation& fol, const FlowState& flow, double G) {
  if (flow.r.size() < 3) throw ConfigError("monotonicity_check: need at least 3 stored radii");
  std::vector<double> m = mass_profile(fol, flow, G);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < flow.r.size(); ++k) {
    const double hm = flow.r[k] - flow.r[k - 1];
    const double hp = flow.r[k + 1] - flow.r[k];
    const double dmdr =
        (hm * hm * m[k + 1] - hp * hp * m[k - 1] - (hm * hm - hp * hp) * m[k]) /
        (hm * hp * (hm + hp));
    const double rate = mass_rate_at(fol, flow.r[k], flow.h[k], G);
    if (rate > 0.0) {
      throw Error("monotonicity_check: identity right side came out positive");
    }
    worst = std::max(worst, std::abs(dmdr - rate));
  }
  return worst;
}

Asymptotics asymptotics_check(const ParallelFoliation& fol, const FlowState& flow) {
  TailFit tf = lapse_tail_fit(fol, flow);
  return {tf.m_o, tf.kappa_bound, tf.kappa_stable};
}

}  // namespace qlm
