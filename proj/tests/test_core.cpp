//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file test_core.cpp
//  \brief unit tests for grids, differences, quadrature, linear solves, ODE, Newton

#include <cmath>
#include <vector>

#include <doctest.h>

#include "core/ops.hpp"

using namespace qlm;

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_abs_diff(const RadialField& f, const std::function<double(double)>& g) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g(f.grid.node(i))));
  return m;
}
}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(RadialGrid(1.0, 0.5, 100), ConfigError);
  CHECK_THROWS_AS(RadialGrid(0.0, 1.0, 8), ConfigError);
  RadialGrid g(0.0, 1.0, 100);
  CHECK(g.npoints() == 101);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(100) == 1.0);
  CHECK(g.spacing() == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("tolerances validation") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.ineq_slack = 1e-7;
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t = Tolerances{};
  t.newton_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("derivative exactness") {
  RadialGrid g(0.0, 1.0, 100);
  // constants and linears are exact
  CHECK(max_abs_diff(derivative(RadialField(g, 3.5)), [](double) { return 0.0; }) == 0.0);
  auto lin = RadialField::sample(g, [](double s) { return 2.0 * s - 1.0; });
  CHECK(max_abs_diff(derivative(lin), [](double) { return 2.0; }) <= 1e-13);
  // quadratics are exact for both the central and one-sided stencils
  auto quad = RadialField::sample(g, [](double s) { return s * s; });
  CHECK(max_abs_diff(derivative(quad), [](double s) { return 2.0 * s; }) <= 1e-12);
}

TEST_CASE("derivative second-order convergence") {
  auto err = [](int n) {
    RadialGrid g(0.0, 2.0, n);
    auto f = RadialField::sample(g, [](double s) { return std::sin(s); });
    return max_abs_diff(derivative(f), [](double s) { return std::cos(s); });
  };
  CHECK(err(100) / err(200) >= 3.5);
}

TEST_CASE("simpson quadrature") {
  RadialGrid g(0.0, 1.0, 64);
  CHECK(integrate(RadialField(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  auto cubic = RadialField::sample(g, [](double s) { return s * s * s; });
  CHECK(integrate(cubic) == doctest::Approx(0.25).epsilon(1e-12));
  RadialGrid gs(0.0, kPi, 200);
  auto sf = RadialField::sample(gs, [](double s) { return std::sin(s); });
  CHECK(std::abs(integrate(sf) - 2.0) <= 1e-9);
  // odd interval count is a misconfiguration
  RadialGrid godd(0.0, 1.0, 65);
  CHECK_THROWS_AS(integrate(RadialField(godd, 1.0)), ConfigError);
}

TEST_CASE("simpson fourth-order convergence on non-polynomials") {
  auto err = [](int n) {
    RadialGrid g(0.0, 1.0, n);
    auto f = RadialField::sample(g, [](double s) { return std::exp(s); });
    return std::abs(integrate(f) - (std::exp(1.0) - 1.0));
  };
  CHECK(err(32) / err(64) >= 15.0);
}

TEST_CASE("derivative then integrate recovers the endpoint value") {
  auto err = [](int n) {
    RadialGrid g(0.0, 2.0, n);
    auto f = RadialField::sample(g, [](double s) { return std::sin(s); });
    return std::abs(integrate(derivative(f)) - std::sin(2.0));
  };
  CHECK(err(100) <= 1e-4);
  CHECK(err(100) / err(200) >= 3.5);
}

TEST_CASE("tridiagonal solve") {
  // identity
  Vec d{1, 1, 1, 1}, lo{0, 0, 0}, up{0, 0, 0}, b{4, 3, 2, 1};
  Vec x = solve_tridiagonal(lo, d, up, b);
  for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-14));

  // 3x3 with hand-solved solution (1, 1, 1)
  Vec d3{2, 3, 2}, lo3{1, 1}, up3{1, 1}, b3{3, 5, 3};
  Vec x3 = solve_tridiagonal(lo3, d3, up3, b3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(x3[i] - 1.0) <= 1e-14);

  // zero pivot
  Vec dz{0.0, 1.0}, loz{1.0}, upz{1.0}, bz{1.0, 1.0};
  CHECK_THROWS_AS(solve_tridiagonal(loz, dz, upz, bz), SingularSystemError);
}

TEST_CASE("tridiagonal solve is nodal-exact on the discrete two-point problem") {
  // u(s) = s(1-s) solves -u'' = 2 with zero boundary data; the second-difference
  // scheme is exact on quadratics
  const int n = 64;
  RadialGrid g(0.0, 1.0, n);
  const double h2 = g.spacing() * g.spacing();
  Vec lo(n, 0.0), up(n, 0.0), d(n + 1, 0.0), b(n + 1, 0.0);
  d[0] = d[n] = 1.0;
  for (int i = 1; i < n; ++i) {
    lo[i - 1] = -1.0 / h2;
    d[i] = 2.0 / h2;
    up[i] = -1.0 / h2;
    b[i] = 2.0;
  }
  Vec u = solve_tridiagonal(lo, d, up, b);
  for (int i = 0; i <= n; ++i) {
    const double s = g.node(i);
    CHECK(std::abs(u[i] - s * (1.0 - s)) <= 1e-12);
  }
}

TEST_CASE("ode integration basics") {
  Tolerances tol;
  // y' = 0
  auto rhs0 = [](double, std::span<const double>, std::span<double> dy) { dy[0] = 0.0; };
  OdeTrajectory t0 = integrate_ode(rhs0, {2.5}, 0.0, 1.0, tol);
  CHECK(t0.y.back()[0] == 2.5);

  // y' = y reaches e
  auto rhs1 = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
  OdeTrajectory t1 = integrate_ode(rhs1, {1.0}, 0.0, 1.0, tol);
  CHECK(std::abs(t1.y.back()[0] - std::exp(1.0)) <= 1e-8);
}

TEST_CASE("ode error tightens with tolerance") {
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
  auto err_at = [&](double rel) {
    Tolerances tol;
    tol.ode_rel_tol = rel;
    tol.ode_abs_tol = rel * 1e-2;
    OdeTrajectory t = integrate_ode(rhs, {1.0}, 0.0, 1.0, tol);
    return std::abs(t.y.back()[0] - std::exp(1.0));
  };
  const double e6 = err_at(1e-6), e8 = err_at(1e-8), e10 = err_at(1e-10);
  CHECK(e8 < e6);
  CHECK(e10 < e8);
  CHECK(e10 <= 1e-9);
}

TEST_CASE("ode conserves the oscillator energy") {
  Tolerances tol;
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  OdeTrajectory t = integrate_ode(rhs, {1.0, 0.0}, 0.0, 20.0 * kPi, tol);
  const double E = t.y.back()[0] * t.y.back()[0] + t.y.back()[1] * t.y.back()[1];
  CHECK(std::abs(E - 1.0) <= 1e-6);
}

TEST_CASE("ode stores requested radii exactly") {
  Tolerances tol;
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
  std::vector<double> at{0.0, 0.25, 0.5, 0.75, 1.0};
  OdeTrajectory t = integrate_ode(rhs, {1.0}, 0.0, 1.0, tol, at);
  REQUIRE(t.r.size() == at.size());
  for (std::size_t k = 0; k < at.size(); ++k) {
    CHECK(t.r[k] == at[k]);
    CHECK(std::abs(t.y[k][0] - std::exp(at[k])) <= 1e-8);
  }
}

TEST_CASE("ode blow-up reports the last good radius") {
  Tolerances tol;
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[0] * y[0];
  };
  try {
    integrate_ode(rhs, {1.0}, 0.0, 2.0, tol);
    FAIL("expected breakdown");
  } catch (const FlowBreakdownError& e) {
    CHECK(e.last_r() == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("damped newton on scalar problems") {
  NewtonOptions opt;
  // linear: one step
  auto lin = [](const Vec& x) { return Vec{x[0] - 4.0}; };
  auto jlin = [](const Vec&) { return std::vector<Vec>{{1.0}}; };
  Vec x = damped_newton(lin, jlin, {0.0}, opt);
  CHECK(std::abs(x[0] - 4.0) <= 1e-14);

  // quadratic root
  auto quad = [](const Vec& x) { return Vec{x[0] * x[0] - 4.0}; };
  auto jquad = [](const Vec& x) { return std::vector<Vec>{{2.0 * x[0]}}; };
  x = damped_newton(quad, jquad, {3.0}, opt);
  CHECK(std::abs(x[0] - 2.0) <= 1e-12);
}

TEST_CASE("damped newton on a plane system with a known root") {
  NewtonOptions opt;
  auto res = [](const Vec& v) {
    const double x = v[0], y = v[1];
    return Vec{x * x + y * y - 5.0, x * y - 2.0};
  };
  auto jac = [](const Vec& v) {
    const double x = v[0], y = v[1];
    return std::vector<Vec>{{2.0 * x, 2.0 * y}, {y, x}};
  };
  Vec x = damped_newton(res, jac, {0.8, 2.3}, opt);
  CHECK(std::abs(x[0] - 1.0) <= 1e-10);
  CHECK(std::abs(x[1] - 2.0) <= 1e-10);
}

TEST_CASE("tridiagonal newton solves a quasilinear two-point problem") {
  // u'' = u^2 + g with g manufactured so u(s) = sin(pi s) solves it
  const int n = 80;
  RadialGrid g(0.0, 1.0, n);
  const double h2 = g.spacing() * g.spacing();
  auto residual = [&](const Vec& u) {
    Vec r(n + 1);
    r[0] = u[0];
    r[n] = u[n];
    for (int i = 1; i < n; ++i) {
      const double s = g.node(i);
      const double target = std::sin(kPi * s);
      const double gterm = -kPi * kPi * target - target * target;
      r[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2 - u[i] * u[i] - gterm;
    }
    return r;
  };
  NewtonOptions opt;
  Vec u = damped_newton_tridiagonal(residual, Vec(n + 1, 0.0), opt);
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(u[i] - std::sin(kPi * g.node(i))));
  CHECK(worst <= 2e-3);  // discretization-level error only
}

TEST_CASE("newton reports nonconvergence when the budget is too small") {
  NewtonOptions opt;
  opt.max_iter = 3;
  auto res = [](const Vec& x) { return Vec{x[0] * x[0] - 4.0}; };
  auto jac = [](const Vec& x) { return std::vector<Vec>{{2.0 * x[0]}}; };
  CHECK_THROWS_AS(damped_newton(res, jac, {100.0}, opt), NonconvergenceError);
}
