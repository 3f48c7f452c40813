//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file test_surface.cpp
//  \brief Gauss curvature, Weyl embedding, quadratures, Minkowski margin

#include <cmath>
#include <vector>

#include <doctest.h>

#include "surface/axisym.hpp"

using namespace qlm;

namespace {
constexpr double kPi = 3.14159265358979323846;

// closed-form spheroid (a, a, c): w^2 = a^2 cos^2 + c^2 sin^2
double spheroid_w2(double a, double c, double th) {
  const double sn = std::sin(th), cs = std::cos(th);
  return a * a * cs * cs + c * c * sn * sn;
}
double spheroid_K(double a, double c, double th) {
  const double w2 = spheroid_w2(a, c, th);
  return c * c / (w2 * w2);
}
double spheroid_k1(double a, double c, double th) {
  return a * c / std::pow(spheroid_w2(a, c, th), 1.5);
}
double spheroid_k2(double a, double c, double th) {
  return c / (a * std::sqrt(spheroid_w2(a, c, th)));
}
}  // namespace

TEST_CASE("theta derivative and face interpolation orders") {
  ThetaGrid g(128);
  std::vector<double> f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = std::cos(2.0 * g.center(i));  // even field
  std::vector<double> d = theta_derivative(g, f, Parity::even);
  double worst = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] + 2.0 * std::sin(2.0 * g.center(i))));
  }
  CHECK(worst <= 1e-9);

  std::vector<double> o(g.size());
  for (int i = 0; i < g.size(); ++i) o[i] = std::sin(g.center(i));  // odd field
  std::vector<double> faces = to_faces(g, o, Parity::odd);
  CHECK(faces[0] == 0.0);
  CHECK(faces[g.size()] == 0.0);
  worst = 0.0;
  for (int k = 0; k <= g.size(); ++k) {
    worst = std::max(worst, std::abs(faces[k] - std::sin(g.face(k))));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("gauss curvature closed forms") {
  SUBCASE("round sphere") {
    const double a = 2.5;
    std::vector<double> K = gauss_curvature(round_metric(a, 128));
    for (double k : K) CHECK(k == doctest::Approx(1.0 / (a * a)).epsilon(1e-10));
  }
  SUBCASE("prolate spheroid (1,1,2)") {
    AxisymMetric m = ellipsoid_metric(1.0, 2.0, 128);
    std::vector<double> K = gauss_curvature(m);
    double worst = 0.0;
    for (int i = 0; i < m.grid.size(); ++i) {
      worst = std::max(worst, std::abs(K[i] - spheroid_K(1.0, 2.0, m.grid.center(i))));
    }
    CHECK(worst <= 1e-7);
  }
  SUBCASE("scaling law") {
    AxisymMetric m = ellipsoid_metric(1.0, 2.0, 96);
    const double lam2 = 2.89;
    AxisymMetric ms = m;
    for (int i = 0; i < m.grid.size(); ++i) {
      ms.Atheta[i] *= lam2;
      ms.Btheta[i] *= lam2;
    }
    std::vector<double> K = gauss_curvature(m), Ks = gauss_curvature(ms);
    for (int i = 0; i < m.grid.size(); ++i) {
      CHECK(Ks[i] == doctest::Approx(K[i] / lam2).epsilon(1e-11));
    }
  }
}

TEST_CASE("gauss curvature converges at high order") {
  auto err = [](int n) {
    AxisymMetric m = ellipsoid_metric(1.0, 2.0, n);
    std::vector<double> K = gauss_curvature(m);
    double worst = 0.0;
    for (int i = 0; i < m.grid.size(); ++i) {
      worst = std::max(worst, std::abs(K[i] - spheroid_K(1.0, 2.0, m.grid.center(i))));
    }
    return worst;
  };
  CHECK(std::log2(err(64) / err(128)) >= 1.9);
}

TEST_CASE("weyl embedding of the round sphere") {
  const double a = 3.0;
  ProfileEmbedding e = weyl_embed(round_metric(a, 128));
  for (int i = 0; i < e.grid.size(); ++i) {
    const double th = e.grid.center(i);
    CHECK(e.rho[i] == doctest::Approx(a * std::sin(th)).epsilon(1e-12));
    CHECK(e.z[i] == doctest::Approx(-a * std::cos(th)).epsilon(1e-4));
    CHECK(e.kappa1[i] == doctest::Approx(1.0 / a).epsilon(1e-9));
    CHECK(e.kappa2[i] == doctest::Approx(1.0 / a).epsilon(1e-9));
    CHECK(e.H0[i] == doctest::Approx(2.0 / a).epsilon(1e-9));
    CHECK(e.support[i] == doctest::Approx(a).epsilon(1e-4));
    CHECK(e.radius2[i] == doctest::Approx(a * a).epsilon(1e-4));
  }
  CHECK(e.area == doctest::Approx(4.0 * kPi * a * a).epsilon(1e-5));
}

TEST_CASE("weyl embedding recovers the generating ellipsoids") {
  for (auto [a, c] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.0}}) {
    ProfileEmbedding e = weyl_embed(ellipsoid_metric(a, c, 256));
    double w1 = 0.0, w2 = 0.0, wz = 0.0;
    for (int i = 0; i < e.grid.size(); ++i) {
      const double th = e.grid.center(i);
      w1 = std::max(w1, std::abs(e.kappa1[i] - spheroid_k1(a, c, th)));
      w2 = std::max(w2, std::abs(e.kappa2[i] - spheroid_k2(a, c, th)));
      // profile matches (a sin, -c cos) up to the vertical centering convention
      wz = std::max(wz, std::abs(e.z[i] + c * std::cos(th)));
    }
    CHECK(w1 <= 1e-8);
    CHECK(w2 <= 1e-8);
    CHECK(wz <= 1e-4);
  }
}

TEST_CASE("theorema egregium round trip at order >= 1.9") {
  auto mismatch = [](int n) {
    AxisymMetric m = ellipsoid_metric(1.0, 2.0, n);
    std::vector<double> K = gauss_curvature(m);
    ProfileEmbedding e = weyl_embed(m);
    double worst = 0.0;
    for (int i = 0; i < m.grid.size(); ++i) {
      worst = std::max(worst, std::abs(K[i] - e.kappa1[i] * e.kappa2[i]));
    }
    return worst;
  };
  CHECK(std::log2(mismatch(64) / mismatch(128)) >= 1.9);
}

TEST_CASE("re-embedding the induced metric reproduces the curvatures") {
  AxisymMetric m = ellipsoid_metric(1.3, 0.9, 128);
  ProfileEmbedding e = weyl_embed(m);
  AxisymMetric induced{m.grid, std::vector<double>(m.grid.size()),
                       std::vector<double>(m.grid.size())};
  for (int i = 0; i < m.grid.size(); ++i) {
    induced.Atheta[i] = e.drho[i] * e.drho[i] + e.zp[i] * e.zp[i];
    induced.Btheta[i] = e.rho[i] * e.rho[i];
  }
  ProfileEmbedding e2 = weyl_embed(induced);
  for (int i = 0; i < m.grid.size(); ++i) {
    CHECK(e2.kappa1[i] == doctest::Approx(e.kappa1[i]).epsilon(1e-10));
    CHECK(e2.kappa2[i] == doctest::Approx(e.kappa2[i]).epsilon(1e-10));
  }
}

TEST_CASE("embedding rejections") {
  // indefinite curvature: a deep dip in A_theta drives K negative somewhere
  AxisymMetric bad = round_metric(1.0, 96);
  for (int i = 0; i < bad.grid.size(); ++i) {
    const double s2 = std::sin(2.0 * bad.grid.center(i));
    bad.Atheta[i] *= 1.0 - 0.7 * s2 * s2;
  }
  CHECK_THROWS_AS(weyl_embed(bad), DataError);

  // pole regularity violation is caught by validation
  AxisymMetric irregular = round_metric(1.0, 96);
  for (int i = 0; i < irregular.grid.size(); ++i) {
    const double sn = std::sin(irregular.grid.center(i));
    irregular.Btheta[i] = sn * sn * sn * sn + 1e-12;
  }
  CHECK_THROWS_AS(gauss_curvature(irregular), DataError);
}

TEST_CASE("gauss-bonnet holds to quadrature accuracy") {
  for (const AxisymMetric& m : {round_metric(1.7, 512), ellipsoid_metric(1.0, 2.0, 512),
                                ellipsoid_metric(2.0, 1.0, 512)}) {
    std::vector<double> K = gauss_curvature(m);
    std::vector<double> J(m.grid.size());
    for (int i = 0; i < m.grid.size(); ++i) J[i] = std::sqrt(m.Atheta[i] * m.Btheta[i]);
    CHECK(std::abs(surface_integral_corrected(m.grid, K, J) - 4.0 * kPi) <= 1e-4);
  }
}

TEST_CASE("minkowski margin") {
  SUBCASE("round spheres sit on the equality case") {
    for (double a : {1.0, 3.0, 10.0}) {
      CHECK(std::abs(minkowski_margin(weyl_embed(round_metric(a, 512)))) <= 1e-9);
    }
  }
  SUBCASE("ellipsoids have positive margin") {
    CHECK(minkowski_margin(weyl_embed(ellipsoid_metric(1.0, 2.0, 256))) > 0.1);
    CHECK(minkowski_margin(weyl_embed(ellipsoid_metric(2.0, 1.0, 256))) > 0.1);
  }
  SUBCASE("margin is homogeneous of degree one") {
    const double m1 = minkowski_margin(weyl_embed(ellipsoid_metric(1.0, 2.0, 256)));
    const double m2 = minkowski_margin(weyl_embed(ellipsoid_metric(3.0, 6.0, 256)));
    CHECK(m2 == doctest::Approx(3.0 * m1).epsilon(1e-9));
  }
}
