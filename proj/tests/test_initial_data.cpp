//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file test_initial_data.cpp
//  \brief constraint densities, horizon scan, boundary geometry, and presets

#include <cmath>

#include <doctest.h>

#include "core/ops.hpp"
#include "data/initial_data.hpp"

using namespace qlm;

namespace {

double field_sup(const RadialField& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar curvature oracles") {
  // flat slice: R = 0 to machine precision
  SphericalDataSet flat = flat_data(0.0, 1.0, 200);
  RadialField Rf = radial_scalar_curvature(flat.grid, flat.A, flat.dA, flat.B, flat.dB,
                                           flat.d2B);
  CHECK(field_sup(Rf) <= 1e-13);

  // Schwarzschild slice in the areal gauge is vacuum
  SphericalDataSet sch = schwarzschild_data(1.0, 2.5, 50.0, 400);
  RadialField Rs = radial_scalar_curvature(sch.grid, sch.A, sch.dA, sch.B, sch.dB, sch.d2B);
  CHECK(field_sup(Rs) <= 1e-12);

  // and so is the conformally flat gauge, including near the throat
  SphericalDataSet iso = isotropic_schwarzschild(1.0, 0.3, 4.0, 400);
  RadialField Ri = radial_scalar_curvature(iso.grid, iso.A, iso.dA, iso.B, iso.dB, iso.d2B);
  CHECK(field_sup(Ri) <= 1e-11);

  // constant radial factor: closed form 2 (1 - 1/c^2) / s^2
  const double c = 1.3;
  RadialGrid g(0.5, 2.0, 128);
  SphericalDataSet cd = dataset_from_fields(g, std::vector<double>(g.npoints(), c),
                                            std::vector<double>(g.npoints(), 0.0),
                                            std::vector<double>(g.npoints(), 0.0));
  RadialField Rc = radial_scalar_curvature(cd.grid, cd.A, cd.dA, cd.B, cd.dB, cd.d2B);
  double worst = 0.0;
  for (int i = 0; i < Rc.size(); ++i) {
    const double s = g.node(i);
    worst = std::max(worst, std::abs(Rc[i] - 2.0 * (1.0 - 1.0 / (c * c)) / (s * s)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("constraint densities on exact slices") {
  SphericalDataSet sch = schwarzschild_data(1.0, 2.5, 50.0, 2000);
  ConstraintDensities cd = constraint_densities(sch);
  CHECK(field_sup(cd.mu) <= 1e-8);
  CHECK(field_sup(cd.J_rad) <= 1e-8);
  CHECK(field_sup(energy_condition_margin(cd)) <= 1e-8);

  SphericalDataSet flat = flat_data(0.0, 1.0, 200);
  ConstraintDensities cf = constraint_densities(flat);
  CHECK(field_sup(cf.mu) == 0.0);
  CHECK(field_sup(cf.J_rad) == 0.0);
}

TEST_CASE("constraint densities with constant extrinsic curvature") {
  // p_rad = p_tan = c on a flat slice: mu = 3 c^2 and the current vanishes
  const double c = 0.2;
  RadialGrid g(0.5, 2.0, 200);
  SphericalDataSet d = dataset_from_fields(g, std::vector<double>(g.npoints(), 1.0),
                                           std::vector<double>(g.npoints(), c),
                                           std::vector<double>(g.npoints(), c));
  ConstraintDensities cd = constraint_densities(d);
  for (int i = 0; i < cd.mu.size(); ++i) {
    CHECK(cd.mu[i] == doctest::Approx(3.0 * c * c).epsilon(1e-12));
    CHECK(std::abs(cd.J_rad[i]) <= 1e-13);
  }
  RadialField margin = energy_condition_margin(cd);
  CHECK(margin.min() == doctest::Approx(3.0 * c * c).epsilon(1e-12));
}

TEST_CASE("purely radial constant stress gives a genuinely nonzero current") {
  // p_rad = c, p_tan = 0 on flat data: mu = 0 but J_rad = 2c/s (checked against an
  // independent Cartesian computation of the divergence), so the energy-condition
  // margin is strictly negative for c != 0
  const double c = 0.1;
  RadialGrid g(0.5, 2.0, 200);
  SphericalDataSet d = dataset_from_fields(g, std::vector<double>(g.npoints(), 1.0),
                                           std::vector<double>(g.npoints(), c),
                                           std::vector<double>(g.npoints(), 0.0));
  ConstraintDensities cd = constraint_densities(d);
  CHECK(field_sup(cd.mu) <= 1e-14);
  for (int i = 0; i < cd.J_rad.size(); ++i) {
    CHECK(cd.J_rad[i] == doctest::Approx(2.0 * c / g.node(i)).epsilon(1e-12));
  }
  CHECK(energy_condition_margin(cd).max() < 0.0);
}

TEST_CASE("vacuum invariance converges at second order on sampled fields") {
  auto vacuum_error = [](int n) {
    RadialGrid g(2.5, 10.0, n);
    std::vector<double> A(g.npoints());
    for (int i = 0; i < g.npoints(); ++i) A[i] = 1.0 / std::sqrt(1.0 - 2.0 / g.node(i));
    SphericalDataSet d = dataset_from_fields(g, std::move(A),
                                             std::vector<double>(g.npoints(), 0.0),
                                             std::vector<double>(g.npoints(), 0.0));
    ConstraintDensities cd = constraint_densities(d);
    return field_sup(cd.mu);
  };
  const double e1 = vacuum_error(200), e2 = vacuum_error(400);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e2 <= 1e-3);
}

TEST_CASE("regular center limit of the scalar curvature") {
  // A = 1 + eps s^2 has R(0) = 12 eps; compare the center value against quadratic
  // extrapolation from the interior
  const double eps = 0.05;
  RadialGrid g(0.0, 1.0, 400);
  std::vector<double> A(g.npoints());
  for (int i = 0; i < g.npoints(); ++i) {
    const double s = g.node(i);
    A[i] = 1.0 + eps * s * s;
  }
  SphericalDataSet d = dataset_from_fields(g, std::move(A),
                                           std::vector<double>(g.npoints(), 0.0),
                                           std::vector<double>(g.npoints(), 0.0));
  RadialField R = radial_scalar_curvature(d.grid, d.A, d.dA, d.B, d.dB, d.d2B);
  CHECK(R[0] == doctest::Approx(12.0 * eps).epsilon(5e-3));
  const double extrap = 3.0 * R[1] - 3.0 * R[2] + R[3];
  CHECK(std::abs(R[0] - extrap) <= 5e-3 * std::abs(R[0]) + 1e-10);
}

TEST_CASE("horizon scan") {
  // Schwarzschild exterior has no marginal spheres
  CHECK(horizon_scan(schwarzschild_data(1.0, 2.5, 20.0, 800)).empty());
  CHECK(horizon_scan(flat_data(0.0, 1.0, 200)).empty());

  // conformally flat gauge: minimal throat at s = M/2 shows up for both sign families
  const double M = 1.0;
  SphericalDataSet iso = isotropic_schwarzschild(M, 0.25 * M, 4.0 * M, 2000);
  auto roots = horizon_scan(iso);
  REQUIRE(roots.size() == 2);
  bool plus = false, minus = false;
  for (const auto& r : roots) {
    CHECK(std::abs(r.radius - 0.5 * M) <= 1e-8 * 0.5 * M);
    if (r.sign > 0) plus = true;
    if (r.sign < 0) minus = true;
  }
  CHECK(plus);
  CHECK(minus);
}

TEST_CASE("horizon scan finds a constructed marginal sphere") {
  // flat data with a tangential stress dip deep enough that H_s + P_s changes sign
  RadialGrid g(0.5, 3.0, 600);
  std::vector<double> pt(g.npoints());
  for (int i = 0; i < g.npoints(); ++i) {
    const double s = g.node(i);
    pt[i] = -2.0 * std::exp(-8.0 * (s - 1.5) * (s - 1.5));
  }
  SphericalDataSet d = dataset_from_fields(g, std::vector<double>(g.npoints(), 1.0),
                                           std::vector<double>(g.npoints(), 0.0),
                                           std::move(pt));
  auto roots = horizon_scan(d);
  REQUIRE(!roots.empty());
  for (const auto& r : roots) CHECK(r.sign == +1);  // only H_s + P_s can vanish here
}

TEST_CASE("boundary geometry") {
  SUBCASE("schwarzschild") {
    SphericalDataSet d = schwarzschild_data(1.0, 2.5, 4.0, 400);
    BoundaryGeometry bg = boundary_geometry(d);
    CHECK(bg.H == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-13));
    CHECK(bg.P == 0.0);
    CHECK(bg.H0 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bg.sqrt8rhomu == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-12));
    // norm identity of the mean curvature vector
    CHECK(std::abs(bg.sqrt8rhomu * bg.sqrt8rhomu + bg.P * bg.P - bg.H * bg.H) <=
          4e-16 * bg.H * bg.H);
  }
  SUBCASE("flat") {
    SphericalDataSet d = flat_data(0.0, 2.0, 200);
    BoundaryGeometry bg = boundary_geometry(d);
    CHECK(bg.H == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bg.H0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bg.sqrt8rhomu == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("non-spacelike boundary is refused") {
    RadialGrid g(0.5, 2.0, 128);
    SphericalDataSet d = dataset_from_fields(g, std::vector<double>(g.npoints(), 1.0),
                                             std::vector<double>(g.npoints(), 0.0),
                                             std::vector<double>(g.npoints(), 0.6));
    // P = 1.2 exceeds H = 1 at s_out = 2
    CHECK_THROWS_AS(boundary_geometry(d), DataError);
  }
}

TEST_CASE("areal and conformally flat gauges agree at equal areal radius") {
  const double M = 1.0, a = 4.0;
  SphericalDataSet areal = schwarzschild_data(M, 2.5, a, 800);
  // outer isotropic radius with s (1 + M/2s)^2 = a
  const double s_iso = 0.5 * ((a - M) + std::sqrt((a - M) * (a - M) - M * M));
  SphericalDataSet iso = isotropic_schwarzschild(M, 1.0, s_iso, 800);
  BoundaryGeometry b1 = boundary_geometry(areal);
  BoundaryGeometry b2 = boundary_geometry(iso);
  CHECK(b2.areal_radius == doctest::Approx(a).epsilon(1e-12));
  CHECK(b1.area == doctest::Approx(b2.area).epsilon(1e-12));
  CHECK(b1.H * b1.areal_radius == doctest::Approx(b2.H * b2.areal_radius).epsilon(1e-12));
  CHECK(b1.sqrt8rhomu == doctest::Approx(b2.sqrt8rhomu).epsilon(1e-12));
}

TEST_CASE("perturbed data generator") {
  SphericalDataSet d = perturbed_data(7, 0.05);
  ConstraintDensities cd = constraint_densities(d);
  RadialField margin = energy_condition_margin(cd);
  CHECK(margin.min() >= -1e-12);
  CHECK(horizon_scan(d).empty());
  CHECK(cd.mu.max() > 0.0);  // genuinely non-vacuum

  // determinism and seed sensitivity
  SphericalDataSet d2 = perturbed_data(7, 0.05);
  CHECK(d.A.v == d2.A.v);
  CHECK(d.p_tan.v == d2.p_tan.v);
  SphericalDataSet d3 = perturbed_data(8, 0.05);
  CHECK(d.A.v != d3.A.v);
}

TEST_CASE("dataset validation") {
  RadialGrid g(0.0, 1.0, 64);
  std::vector<double> A(g.npoints(), 1.0);
  A[3] = -0.5;
  CHECK_THROWS_AS(dataset_from_fields(g, std::move(A), std::vector<double>(g.npoints(), 0.0),
                                      std::vector<double>(g.npoints(), 0.0)),
                  DataError);
  // ball centers must look smooth: A(0) = 1
  std::vector<double> A2(g.npoints(), 1.1);
  CHECK_THROWS_AS(dataset_from_fields(g, std::move(A2), std::vector<double>(g.npoints(), 0.0),
                                      std::vector<double>(g.npoints(), 0.0)),
                  DataError);
}
