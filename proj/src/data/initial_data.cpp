//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file initial_data.cpp

#include "data/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "core/ops.hpp"

namespace qlm {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

void SphericalDataSet::validate() const {
  assert_finite(A, "A");
  assert_finite(B, "B");
  assert_finite(p_rad, "p_rad");
  assert_finite(p_tan, "p_tan");
  if (!(G > 0)) throw DataError("SphericalDataSet: G must be positive");
  for (int i = 0; i < A.size(); ++i) {
    if (!(A[i] > 0)) throw DataError("SphericalDataSet: A must be positive everywhere");
  }
  for (int i = (is_ball() ? 1 : 0); i < B.size(); ++i) {
    if (!(B[i] > 0)) throw DataError("SphericalDataSet: B must be positive for s > 0");
  }
  if (is_ball()) {
    if (!areal) throw DataError("SphericalDataSet: a ball center requires the areal gauge");
    const double scale = 1.0 + A.max();
    if (!nearly_equal(A[0], 1.0, 1e-10 * scale) || !nearly_equal(dA[0], 0.0, 1e-8 * scale)) {
      throw DataError("SphericalDataSet: smooth center needs A(0) = 1 and A'(0) = 0");
    }
  }
}

RadialField radial_scalar_curvature(const RadialGrid& grid, const RadialField& A,
                                    const RadialField& dA, const RadialField& B,
                                    const RadialField& dB, const RadialField& d2B) {
  const int np = grid.npoints();
  std::vector<double> R(np);
  const int i0 = (grid.s_min() == 0.0) ? 1 : 0;
  for (int i = i0; i < np; ++i) {
    const double w = dB[i] / A[i];                                 // B'/A
    const double dw = d2B[i] / A[i] - dB[i] * dA[i] / (A[i] * A[i]);  // (B'/A)'
    R[i] = 2.0 / (B[i] * B[i]) * (1.0 - w * w) - 4.0 / (A[i] * B[i]) * dw;
  }
  if (i0 == 1) {
    // regular center: R(0) = 6 A''(0); dA is odd there, so A''(0) = dA(ds)/ds + O(ds^2)
    R[0] = 6.0 * dA[1] / grid.spacing();
  }
  return RadialField(grid, std::move(R));
}

ConstraintDensities constraint_densities(const SphericalDataSet& data) {
  data.validate();
  const RadialGrid& grid = data.grid;
  RadialField R = radial_scalar_curvature(grid, data.A, data.dA, data.B, data.dB, data.d2B);

  const int np = grid.npoints();
  std::vector<double> mu(np), J(np);
  for (int i = 0; i < np; ++i) {
    mu[i] = 0.5 * R[i] + 2.0 * data.p_rad[i] * data.p_tan[i] + data.p_tan[i] * data.p_tan[i];
  }
  const int i0 = data.is_ball() ? 1 : 0;
  for (int i = i0; i < np; ++i) {
    J[i] = (-2.0 * data.dp_tan[i] +
            2.0 * (data.dB[i] / data.B[i]) * (data.p_rad[i] - data.p_tan[i])) /
           data.A[i];
  }
  if (i0 == 1) {
    // smooth center: (p_rad - p_tan)/s -> (p_rad - p_tan)'(0)
    J[0] = (2.0 * data.dp_rad[0] - 4.0 * data.dp_tan[0]) / data.A[0];
  }
  return {RadialField(grid, std::move(mu)), RadialField(grid, std::move(J))};
}

RadialField energy_condition_margin(const ConstraintDensities& d) {
  std::vector<double> m(d.mu.size());
  for (int i = 0; i < d.mu.size(); ++i) m[i] = d.mu[i] - std::abs(d.J_rad[i]);
  return RadialField(d.mu.grid, std::move(m));
}

namespace {

//! cubic Lagrange interpolation of nodal samples around node index near s
double interp_cubic(const RadialGrid& g, const std::vector<double>& f, double s) {
  const int n = g.intervals();
  int i = static_cast<int>(std::floor((s - g.s_min()) / g.spacing()));
  i = std::clamp(i, 0, n - 1);
  int j0 = std::clamp(i - 1, 0, n - 3);
  double result = 0.0;
  for (int j = j0; j < j0 + 4; ++j) {
    double lj = 1.0;
    for (int k = j0; k < j0 + 4; ++k) {
      if (k != j) lj *= (s - g.node(k)) / (g.node(j) - g.node(k));
    }
    result += lj * f[j];
  }
  return result;
}

void scan_field(const RadialGrid& grid, const std::vector<double>& field, int sign, int i0,
                std::vector<HorizonRoot>& roots) {
  const int np = grid.npoints();
  auto eval = [&](double s) { return interp_cubic(grid, field, s); };
  for (int i = i0; i + 1 < np; ++i) {
    const double fa = field[i], fb = field[i + 1];
    if (fa == 0.0) {
      roots.push_back({grid.node(i), sign});
      continue;
    }
    if (i + 2 == np && fb == 0.0) roots.push_back({grid.node(i + 1), sign});
    if (fa * fb >= 0.0) continue;
    double a = grid.node(i), b = grid.node(i + 1);
    double va = fa;
    while (b - a > 1e-12 * (std::abs(a) + std::abs(b))) {
      const double mid = 0.5 * (a + b);
      const double vm = eval(mid);
      if (vm == 0.0) {
        a = b = mid;
        break;
      }
      if (va * vm < 0.0) {
        b = mid;
      } else {
        a = mid;
        va = vm;
      }
    }
    roots.push_back({0.5 * (a + b), sign});
  }
}

}  // namespace

std::vector<HorizonRoot> horizon_scan(const SphericalDataSet& data) {
  data.validate();
  const RadialGrid& grid = data.grid;
  const int np = grid.npoints();
  const int i0 = data.is_ball() ? 1 : 0;  // H_s diverges at a regular center
  std::vector<double> plus(np, 1.0), minus(np, 1.0);
  for (int i = i0; i < np; ++i) {
    const double Hs = 2.0 * data.dB[i] / (data.A[i] * data.B[i]);
    const double Ps = 2.0 * data.p_tan[i];
    plus[i] = Hs + Ps;
    minus[i] = Hs - Ps;
  }
  std::vector<HorizonRoot> roots;
  scan_field(grid, plus, +1, i0, roots);
  scan_field(grid, minus, -1, i0, roots);
  std::sort(roots.begin(), roots.end(),
            [](const HorizonRoot& a, const HorizonRoot& b) { return a.radius < b.radius; });
  return roots;
}

BoundaryGeometry boundary_geometry(const SphericalDataSet& data) {
  data.validate();
  const int n = data.grid.intervals();
  BoundaryGeometry bg;
  bg.s_b = data.grid.s_max();
  bg.areal_radius = data.B[n];
  bg.H = 2.0 * data.dB[n] / (data.A[n] * data.B[n]);
  bg.P = 2.0 * data.p_tan[n];
  bg.H0 = 2.0 / bg.areal_radius;
  bg.area = 4.0 * kPi * bg.areal_radius * bg.areal_radius;
  if (!(bg.H > 0.0) || !(bg.H * bg.H > bg.P * bg.P)) {
    throw DataError("boundary_geometry: mean curvature vector is not spacelike outward "
                    "(need H > |P|) at s = " + std::to_string(bg.s_b));
  }
  bg.sqrt8rhomu = std::sqrt(bg.H * bg.H - bg.P * bg.P);
  return bg;
}

// ---- presets ---------------------------------------------------------------------------

namespace {

using ScalarFn = std::function<double(double)>;

SphericalDataSet build_analytic(const RadialGrid& grid, const ScalarFn& A, const ScalarFn& dA,
                                const ScalarFn& B, const ScalarFn& dB, const ScalarFn& d2B,
                                const ScalarFn& pr, const ScalarFn& dpr, const ScalarFn& pt,
                                const ScalarFn& dpt, double G, bool areal) {
  SphericalDataSet d{grid,
                     RadialField::sample(grid, A),
                     RadialField::sample(grid, B),
                     RadialField::sample(grid, pr),
                     RadialField::sample(grid, pt),
                     RadialField::sample(grid, dA),
                     RadialField::sample(grid, dB),
                     RadialField::sample(grid, d2B),
                     RadialField::sample(grid, dpr),
                     RadialField::sample(grid, dpt),
                     G,
                     areal};
  return d;
}

}  // namespace

SphericalDataSet flat_data(double s_in, double s_out, int n, double G) {
  RadialGrid grid(s_in, s_out, n);
  auto zero = [](double) { return 0.0; };
  auto one = [](double) { return 1.0; };
  auto id = [](double s) { return s; };
  SphericalDataSet d = build_analytic(grid, one, zero, id, one, zero, zero, zero, zero, zero,
                                      G, true);
  d.preset = "flat";
  d.preset_params = {{"s_in", s_in}, {"s_out", s_out}, {"n", double(n)}, {"G", G}};
  d.validate();
  return d;
}

SphericalDataSet schwarzschild_data(double M, double s_in, double s_out, int n, double G) {
  if (!(s_in > 2.0 * M)) {
    throw ConfigError("schwarzschild_data: need s_in > 2M to stay outside the horizon");
  }
  RadialGrid grid(s_in, s_out, n);
  auto A = [M](double s) { return 1.0 / std::sqrt(1.0 - 2.0 * M / s); };
  auto dA = [M, A](double s) {
    const double a = A(s);
    return -(M / (s * s)) * a * a * a;
  };
  auto zero = [](double) { return 0.0; };
  auto one = [](double) { return 1.0; };
  auto id = [](double s) { return s; };
  SphericalDataSet d = build_analytic(grid, A, dA, id, one, zero, zero, zero, zero, zero,
                                      G, true);
  d.preset = "schwarzschild";
  d.preset_params = {{"M", M}, {"s_in", s_in}, {"s_out", s_out}, {"n", double(n)}, {"G", G}};
  d.validate();
  return d;
}

SphericalDataSet isotropic_schwarzschild(double M, double s_in, double s_out, int n, double G) {
  if (!(s_in > 0.0)) throw ConfigError("isotropic_schwarzschild: need s_in > 0");
  RadialGrid grid(s_in, s_out, n);
  auto psi = [M](double s) { return 1.0 + 0.5 * M / s; };
  auto A = [psi](double s) {
    const double p = psi(s);
    return p * p;
  };
  auto dA = [M, psi](double s) { return -M * psi(s) / (s * s); };
  auto B = [A](double s) { return s * A(s); };
  auto dB = [M, psi](double s) { return psi(s) * (1.0 - 0.5 * M / s); };
  auto d2B = [M](double s) { return 0.5 * M * M / (s * s * s); };
  auto zero = [](double) { return 0.0; };
  SphericalDataSet d = build_analytic(grid, A, dA, B, dB, d2B, zero, zero, zero, zero,
                                      G, false);
  d.preset = "isotropic_schwarzschild";
  d.preset_params = {{"M", M}, {"s_in", s_in}, {"s_out", s_out}, {"n", double(n)}, {"G", G}};
  d.validate();
  return d;
}

namespace {

//! C^5 compactly supported bump cos^6(pi (s-c) / (2w)) on |s-c| < w, with an exact
//! antiderivative; used for the perturbed-data mass profile and extrinsic curvature.
struct Bump {
  double c, w;
  double xi(double s) const { return 0.5 * kPi * (s - c) / w; }
  bool inside(double s) const { return std::abs(s - c) < w; }
  double value(double s) const {
    if (!inside(s)) return 0.0;
    const double cs = std::cos(xi(s));
    return std::pow(cs, 6);
  }
  double deriv(double s) const {
    if (!inside(s)) return 0.0;
    const double u = xi(s);
    const double cs = std::cos(u), sn = std::sin(u);
    return -6.0 * (0.5 * kPi / w) * std::pow(cs, 5) * sn;
  }
  double deriv2(double s) const {
    if (!inside(s)) return 0.0;
    const double u = xi(s);
    const double cs = std::cos(u), sn = std::sin(u);
    const double k = 0.5 * kPi / w;
    return 6.0 * k * k * std::pow(cs, 4) * (5.0 * sn * sn - cs * cs);
  }
  //! antiderivative of cos^6 from the left edge; total over the support is 5w/8
  double cdf(double s) const {
    if (s <= c - w) return 0.0;
    if (s >= c + w) return 5.0 * w / 8.0;
    const double u = xi(s);
    auto F = [](double x) {
      return (10.0 * x + 7.5 * std::sin(2.0 * x) + 1.5 * std::sin(4.0 * x) +
              std::sin(6.0 * x) / 6.0) / 32.0;
    };
    return (2.0 * w / kPi) * (F(u) - F(-0.5 * kPi));
  }
};

}  // namespace

SphericalDataSet perturbed_data(std::uint64_t seed, double amplitude, double s_out, int n,
                                double G) {
  if (!(amplitude > 0) || !(amplitude < 0.5)) {
    throw ConfigError("perturbed_data: amplitude must lie in (0, 0.5)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double cm = (0.42 + 0.13 * uni(rng)) * s_out;
  const double wm = (0.10 + 0.06 * uni(rng)) * s_out;
  const double cp = cm + (uni(rng) - 0.5) * 0.5 * wm;
  const double wp = 0.55 * wm;
  const double psign = (uni(rng) < 0.5) ? -1.0 : 1.0;
  const double pfrac = 0.5 + 0.5 * uni(rng);

  const Bump mb{cm, wm};
  const Bump pb{cp, wp};
  const double mass = amplitude * 0.5 * s_out;  // total mass of the bump profile
  const double mnorm = mass / (5.0 * wm / 8.0);

  auto m_of = [&](double s) { return mnorm * mb.cdf(s); };
  auto dm_of = [&](double s) { return mnorm * mb.value(s); };

  auto A = [&](double s) {
    const double m = m_of(s);
    return (m == 0.0) ? 1.0 : 1.0 / std::sqrt(1.0 - 2.0 * m / s);  // m == 0 below the support
  };
  auto dA = [&](double s) {
    const double m = m_of(s);
    if (m == 0.0) return 0.0;
    const double a = A(s);
    return a * a * a * (dm_of(s) / s - m / (s * s));
  };
  auto zero = [](double) { return 0.0; };
  auto one = [](double) { return 1.0; };
  auto id = [](double s) { return s; };

  RadialGrid grid(0.0, s_out, n);
  double lam = psign * pfrac * amplitude / s_out;
  for (int attempt = 0; attempt < 60; ++attempt) {
    // p_tan = b, p_rad = b + s b' makes the current density vanish identically,
    // so the energy condition reduces to mu >= 0
    auto pt = [&](double s) { return lam * pb.value(s); };
    auto dpt = [&](double s) { return lam * pb.deriv(s); };
    auto pr = [&](double s) { return lam * (pb.value(s) + s * pb.deriv(s)); };
    auto dpr = [&](double s) { return lam * (2.0 * pb.deriv(s) + s * pb.deriv2(s)); };

    SphericalDataSet d = build_analytic(grid, A, dA, id, one, zero, pr, dpr, pt, dpt, G, true);
    d.preset = "perturbed";
    d.preset_params = {{"seed", double(seed)}, {"amplitude", amplitude},
                       {"s_out", s_out}, {"n", double(n)}, {"G", G}};

    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      if (1.0 - 2.0 * m_of(grid.node(i)) / grid.node(i) < 0.2) ok = false;
    }
    if (ok) {
      ConstraintDensities cd = constraint_densities(d);
      RadialField margin = energy_condition_margin(cd);
      const double floor = -1e-13 * (1.0 + cd.mu.max());
      if (margin.min() < floor) ok = false;
      if (ok && !horizon_scan(d).empty()) ok = false;
    }
    if (ok) {
      d.validate();
      return d;
    }
    lam *= 0.5;
  }
  throw DataError("perturbed_data: energy condition not achievable for this seed");
}

SphericalDataSet dataset_from_fields(const RadialGrid& grid, std::vector<double> A,
                                     std::vector<double> p_rad, std::vector<double> p_tan,
                                     double G, std::vector<double> B) {
  RadialField fA(grid, std::move(A));
  RadialField fpr(grid, std::move(p_rad));
  RadialField fpt(grid, std::move(p_tan));
  bool areal = B.empty();
  RadialField fB = areal ? RadialField::sample(grid, [](double s) { return s; })
                         : RadialField(grid, std::move(B));
  if (!areal) {
    // recognize explicitly-areal input
    areal = true;
    for (int i = 0; i < grid.npoints(); ++i) {
      if (std::abs(fB[i] - grid.node(i)) > 1e-13 * (1.0 + grid.s_max())) {
        areal = false;
        break;
      }
    }
  }
  RadialField dB = areal ? RadialField(grid, 1.0) : derivative(fB);
  RadialField d2B = areal ? RadialField(grid, 0.0) : derivative(dB);
  SphericalDataSet d{grid,     fA, fB, fpr, fpt, derivative(fA), dB, d2B,
                     derivative(fpr), derivative(fpt), G, areal};
  d.validate();
  return d;
}

}  // namespace qlm
