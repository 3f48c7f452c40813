//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file test_jang.cpp
//  \brief Jang equation solves, the graph metric, and the curvature dominance margin

#include <cmath>
#include <vector>

#include <doctest.h>

#include "core/ops.hpp"
#include "data/initial_data.hpp"
#include "jang/jang.hpp"

using namespace qlm;

namespace {
constexpr double kPi = 3.14159265358979323846;

double sup(const RadialField& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

//! Manufactured problem on an annulus over the Schwarzschild slice: the extrinsic
//! curvature is the second fundamental form of the graph of f*(s) = alpha sin(...),
//! so f* solves the Jang problem with zero Dirichlet data at both ends.
struct Manufactured {
  SphericalDataSet data;
  RadialField fstar;
};

Manufactured make_manufactured(int n, double alpha = 0.4) {
  const double M = 1.0, s_in = 2.5, s_out = 6.0, L = s_out - s_in;
  RadialGrid g(s_in, s_out, n);
  auto A = [&](double s) { return 1.0 / std::sqrt(1.0 - 2.0 * M / s); };
  auto dA = [&](double s) {
    const double a = A(s);
    return -(M / (s * s)) * a * a * a;
  };
  auto f = [&](double s) { return alpha * std::sin(kPi * (s - s_in) / L); };
  auto df = [&](double s) { return alpha * (kPi / L) * std::cos(kPi * (s - s_in) / L); };
  auto d2f = [&](double s) {
    return -alpha * (kPi / L) * (kPi / L) * std::sin(kPi * (s - s_in) / L);
  };
  std::vector<double> Av(g.npoints()), pr(g.npoints()), pt(g.npoints());
  for (int i = 0; i < g.npoints(); ++i) {
    const double s = g.node(i);
    const double q = df(s) / A(s);
    const double dq = d2f(s) / A(s) - df(s) * dA(s) / (A(s) * A(s));
    const double W = std::sqrt(1.0 + q * q);
    Av[i] = A(s);
    pr[i] = dq / (A(s) * W);
    pt[i] = q / (s * A(s) * W);
  }
  Manufactured m{dataset_from_fields(g, std::move(Av), std::move(pr), std::move(pt)),
                 RadialField::sample(g, f)};
  return m;
}

}  // namespace

TEST_CASE("residual vanishes for time-symmetric data with zero height") {
  for (const SphericalDataSet& d :
       {flat_data(0.0, 1.0, 128), schwarzschild_data(1.0, 2.5, 10.0, 128)}) {
    RadialField r = jang_residual(d, RadialField(d.grid, 0.0));
    CHECK(sup(r) == 0.0);
  }
}

TEST_CASE("manufactured height annihilates the residual to second order") {
  auto res_err = [](int n) {
    Manufactured m = make_manufactured(n);
    return sup(jang_residual(m.data, m.fstar));
  };
  const double e1 = res_err(200), e2 = res_err(400);
  CHECK(e2 <= 1e-3);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("solve returns zero height on time-symmetric data") {
  Tolerances tol;
  SphericalDataSet d = schwarzschild_data(1.0, 2.5, 10.0, 400);
  JangSolution js = jang_solve(d, tol);
  CHECK(sup(js.f) <= 1e-12);
  CHECK(sup(jang_residual(d, js.f)) <= 1e-12);
  for (int i = 0; i < js.W.size(); ++i) CHECK(js.W[i] >= 1.0);
}

TEST_CASE("solve recovers the manufactured height at order >= 1.9") {
  Tolerances tol;
  auto solve_err = [&](int n) {
    Manufactured m = make_manufactured(n);
    JangSolution js = jang_solve(m.data, tol);
    double worst = 0.0;
    for (int i = 0; i < js.f.size(); ++i) {
      worst = std::max(worst, std::abs(js.f[i] - m.fstar[i]));
    }
    // Dirichlet ends are solved essentially exactly
    CHECK(std::abs(js.f[0]) <= 1e-11);
    CHECK(std::abs(js.f[js.f.size() - 1]) <= 1e-11);
    return worst;
  };
  const double e1 = solve_err(200), e2 = solve_err(400);
  CHECK(e2 <= 5e-4);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("newton telescope is quadratic in the terminal phase") {
  Manufactured m = make_manufactured(300, 0.9);
  const RadialGrid& g = m.data.grid;
  const int n = g.intervals();
  auto system = [&](const Vec& fv) {
    RadialField rf = jang_residual(m.data, RadialField(g, fv));
    Vec out = rf.v;
    out[0] = fv[0];
    out[n] = fv[n];
    return out;
  };
  std::vector<double> norms;
  NewtonOptions opt;
  opt.tol = 1e-13;
  opt.monitor = [&](int, double fn) { norms.push_back(fn); };
  Vec f = damped_newton_tridiagonal(system, Vec(n + 1, 0.0), opt);
  REQUIRE(norms.size() >= 3);
  CHECK(norms.size() <= 12);
  // successive ratios collapse fast once the iterate is close
  const double last = norms[norms.size() - 1], prev = norms[norms.size() - 2];
  CHECK(prev / last >= 50.0);
  for (std::size_t k = 1; k < norms.size(); ++k) CHECK(norms[k] < norms[k - 1]);
}

TEST_CASE("graph geometry of the trivial graph") {
  Tolerances tol;
  SphericalDataSet d = schwarzschild_data(1.0, 2.5, 8.0, 400);
  JangSolution js = jang_solve(d, tol);
  GraphData gd = graph_geometry(d, js);
  for (int i = 0; i < gd.Abar.size(); ++i) {
    CHECK(gd.Abar[i] == doctest::Approx(d.A[i]).epsilon(1e-13));
  }
  CHECK(sup(gd.Rbar) <= 1e-9);   // vacuum slice stays vacuum
  CHECK(sup(gd.X_rad) <= 1e-13);
  CHECK(gd.Hbar == doctest::Approx(0.25 * std::sqrt(0.75)).epsilon(1e-10));
  CHECK(gd.Xnu == doctest::Approx(0.0).epsilon(1e-13));
  RadialField margin = graph_curvature_margin(gd);
  CHECK(sup(margin) <= 1e-8);  // equality case of the dominance inequality
}

TEST_CASE("manufactured graph has vanishing X and dominance margin equal to Rbar") {
  Tolerances tol;
  Manufactured m = make_manufactured(400);
  JangSolution js = jang_solve(m.data, tol);
  GraphData gd = graph_geometry(m.data, js);
  // the extrinsic curvature equals the graph curvature, so X collapses
  CHECK(sup(gd.X_rad) <= 2e-4);
  RadialField margin = graph_curvature_margin(gd);
  double worst = 0.0;
  for (int i = 0; i < margin.size(); ++i) {
    worst = std::max(worst, std::abs(margin[i] - gd.Rbar[i]));
  }
  CHECK(worst <= 2e-3);
}

TEST_CASE("perturbed data: converged solve obeys the dominance inequality") {
  Tolerances tol;
  SphericalDataSet d = perturbed_data(7, 0.02);
  JangSolution js = jang_solve(d, tol);
  CHECK(sup(jang_residual(d, js.f)) <= 1e-10);
  CHECK(std::abs(js.f[js.f.size() - 1]) <= 1e-11);  // outer Dirichlet value
  CHECK(std::abs(js.fprime[0]) <= 1e-6);            // even center

  GraphData gd = graph_geometry(d, js);
  RadialField margin = graph_curvature_margin(gd);
  CHECK(margin.min() >= -1e-8);

  // strict positivity in the bulk where the energy density dominates
  ConstraintDensities cd = constraint_densities(d);
  RadialField ec = energy_condition_margin(cd);
  bool strict = false;
  for (int i = 0; i < margin.size(); ++i) {
    if (ec[i] > 1e-4 && margin[i] > 1e-6) strict = true;
  }
  CHECK(strict);
}

TEST_CASE("solve refuses data with a marginal sphere") {
  RadialGrid g(0.5, 3.0, 400);
  std::vector<double> pt(g.npoints());
  for (int i = 0; i < g.npoints(); ++i) {
    const double s = g.node(i);
    pt[i] = -2.0 * std::exp(-8.0 * (s - 1.5) * (s - 1.5));
  }
  SphericalDataSet d = dataset_from_fields(g, std::vector<double>(g.npoints(), 1.0),
                                           std::vector<double>(g.npoints(), 0.0),
                                           std::move(pt));
  Tolerances tol;
  CHECK_THROWS_AS(jang_solve(d, tol), DataError);
}
