//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file ops.cpp

#include "core/ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace qlm {

RadialField derivative(const RadialField& f) {
  assert_finite(f, "derivative input");
  const int n = f.grid.intervals();
  const double ds = f.grid.spacing();
  std::vector<double> d(n + 1);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * ds);
  for (int i = 1; i < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * ds);
  d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * ds);
  return RadialField(f.grid, std::move(d));
}

double integrate(const RadialField& f) {
  assert_finite(f, "integrate input");
  const int n = f.grid.intervals();
  if (n % 2 != 0) {
    throw ConfigError("integrate: composite Simpson needs an even interval count, got " +
                      std::to_string(n));
  }
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f[i];
  for (int i = 2; i < n; i += 2) even += f[i];
  return f.grid.spacing() / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[n]);
}

namespace {

//! single Thomas sweep; throws on a vanishing pivot
Vec thomas_sweep(std::span<const double> lower, std::span<const double> diag,
                 std::span<const double> upper, std::span<const double> rhs, double tiny) {
  const std::size_t n = diag.size();
  Vec c(n > 1 ? n - 1 : 0), d(n), x(n);
  double piv = diag[0];
  if (std::abs(piv) <= tiny) throw SingularSystemError("solve_tridiagonal: zero pivot at row 0");
  if (n > 1) c[0] = upper[0] / piv;
  d[0] = rhs[0] / piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - lower[i - 1] * c[i - 1];
    if (std::abs(piv) <= tiny) {
      throw SingularSystemError("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    }
    if (i < n - 1) c[i] = upper[i] / piv;
    d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / piv;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace

Vec solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n) {
    throw ConfigError("solve_tridiagonal: inconsistent band sizes");
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
  const double tiny = scale * 1e-15 + std::numeric_limits<double>::min();

  Vec x = thomas_sweep(lower, diag, upper, rhs, tiny);

  auto residual = [&](const Vec& xx, Vec& res) {
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ax = diag[i] * xx[i];
      if (i > 0) ax += lower[i - 1] * xx[i - 1];
      if (i + 1 < n) ax += upper[i] * xx[i + 1];
      res[i] = rhs[i] - ax;
      rnorm = std::max(rnorm, std::abs(res[i]));
    }
    return rnorm;
  };
  double bnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) bnorm = std::max(bnorm, std::abs(rhs[i]));

  Vec res(n);
  double rnorm = residual(x, res);
  // one round of iterative refinement covers mildly non-dominant systems
  if (rnorm > 1e-12 * bnorm) {
    Vec corr = thomas_sweep(lower, diag, upper, res, tiny);
    for (std::size_t i = 0; i < n; ++i) x[i] += corr[i];
    rnorm = residual(x, res);
  }
  if (rnorm > 1e-12 * bnorm + 1e-300) {
    throw SingularSystemError("solve_tridiagonal: residual " + std::to_string(rnorm) +
                              " exceeds 1e-12 * ||b||");
  }
  return x;
}

Vec solve_dense(std::vector<Vec> a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    }
    if (std::abs(a[p][k]) < 1e-300) throw SingularSystemError("solve_dense: singular matrix");
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      if (m == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b - bhat (error weights against the embedded 4th-order solution)
constexpr double kE1 = kB1 - 5179.0 / 57600.0, kE3 = kB3 - 7571.0 / 16695.0,
                 kE4 = kB4 - 393.0 / 640.0, kE5 = kB5 + 92097.0 / 339200.0,
                 kE6 = kB6 - 187.0 / 2100.0, kE7 = -1.0 / 40.0;
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;

}  // namespace

OdeTrajectory integrate_ode(const OdeRhs& rhs, Vec y0, double r0, double r1,
                            const Tolerances& tol, std::span<const double> store_at,
                            const OdeObserver& observer) {
  tol.validate();
  if (!(r1 > r0)) throw ConfigError("integrate_ode: need r1 > r0");
  assert_finite(y0, "integrate_ode initial state");
  for (std::size_t i = 0; i + 1 < store_at.size(); ++i) {
    if (!(store_at[i] < store_at[i + 1])) {
      throw ConfigError("integrate_ode: store_at must be strictly increasing");
    }
  }
  if (!store_at.empty() && (store_at.front() < r0 - 1e-12 || store_at.back() > r1 + 1e-12)) {
    throw ConfigError("integrate_ode: store_at outside the span");
  }

  const std::size_t n = y0.size();
  OdeTrajectory out;
  Vec y = std::move(y0);
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

  double r = r0;
  std::size_t next_store = 0;
  auto store_match = [&](double rr) {
    return next_store < store_at.size() &&
           store_at[next_store] <= rr + 1e-13 * (1.0 + std::abs(rr));
  };
  auto maybe_store = [&](double rr, const Vec& yy) {
    if (store_at.empty()) {
      out.r.push_back(rr);
      out.y.push_back(yy);
      return;
    }
    while (store_match(rr)) {
      out.r.push_back(store_at[next_store]);
      out.y.push_back(yy);
      ++next_store;
    }
  };

  rhs(r, y, k1);  // FSAL seed
  assert_finite(k1, "integrate_ode rhs");

  // initial step from the rhs magnitude
  double ynorm = 0.0, fnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ynorm = std::max(ynorm, std::abs(y[i]));
    fnorm = std::max(fnorm, std::abs(k1[i]));
  }
  double h_work = (fnorm > 0) ? 0.01 * (tol.ode_abs_tol + tol.ode_rel_tol * ynorm) / fnorm
                              : (r1 - r0) * 1e-3;
  h_work = std::clamp(h_work, (r1 - r0) * 1e-12, (r1 - r0) * 1e-2);

  maybe_store(r, y);
  if (observer) observer(r, y);

  while (r < r1) {
    const double target =
        (!store_at.empty() && next_store < store_at.size()) ? store_at[next_store] : r1;
    double h = h_work;
    bool clamped = false;
    if (r + h >= target) {
      h = target - r;
      clamped = true;
    }
    if (h <= (std::abs(r) + 1.0) * 1e-14) {
      throw FlowBreakdownError("integrate_ode: step size underflow", r);
    }

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * kA21 * k1[i];
    rhs(r + kC2 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    rhs(r + kC3 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    rhs(r + kC4 * h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
    rhs(r + kC5 * h, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] + kA64 * k4[i] +
                            kA65 * k5[i]);
    rhs(r + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] + kB6 * k6[i]);
    rhs(r + h, ynew, k7);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                            kE6 * k6[i] + kE7 * k7[i]);
      const double sc =
          tol.ode_abs_tol + tol.ode_rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      if (!std::isfinite(ynew[i]) || !std::isfinite(e)) {
        finite = false;
        break;
      }
      err = std::max(err, std::abs(e) / sc);
    }

    const bool accept = finite && err <= 1.0;
    if (accept) {
      r = clamped ? target : r + h;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      ++out.n_accepted;
      maybe_store(r, y);
      if (observer) observer(r, y);
    } else {
      ++out.n_rejected;
    }
    const double fac =
        finite ? std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0) : 0.1;
    const double h_err = h * fac;
    // keep the controller's natural step across output-clamped accepted steps
    h_work = (accept && clamped) ? std::max(h_err, h_work) : h_err;
  }
  return out;
}

namespace {

double sup_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

//! shared damped-Newton loop; `solve` maps (x, F) to the update direction -J^{-1} F
Vec newton_loop(const std::function<Vec(const Vec&)>& residual,
                const std::function<Vec(const Vec&, const Vec&)>& solve, Vec x,
                const NewtonOptions& opt) {
  Vec f = residual(x);
  assert_finite(f, "newton residual");
  double fnorm = sup_norm(f);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (opt.monitor) opt.monitor(it, fnorm);
    if (fnorm <= opt.tol) return x;
    Vec dx = solve(x, f);
    double lambda = 1.0;
    for (int bt = 0;; ++bt) {
      Vec xt(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + lambda * dx[i];
      Vec ft = residual(xt);
      bool ok = true;
      for (double val : ft) {
        if (!std::isfinite(val)) {
          ok = false;
          break;
        }
      }
      const double ftnorm = ok ? sup_norm(ft) : std::numeric_limits<double>::infinity();
      if (ok && ftnorm < fnorm) {
        x.swap(xt);
        f.swap(ft);
        fnorm = ftnorm;
        break;
      }
      if (bt >= opt.max_backtracks) {
        throw NonconvergenceError("damped_newton: line search stalled at residual " +
                                  std::to_string(fnorm));
      }
      lambda *= 0.5;
    }
  }
  if (fnorm <= opt.tol) return x;
  throw NonconvergenceError("damped_newton: no convergence after " +
                            std::to_string(opt.max_iter) + " iterations, residual " +
                            std::to_string(fnorm));
}

}  // namespace

Vec damped_newton(const std::function<Vec(const Vec&)>& residual,
                  const std::function<std::vector<Vec>(const Vec&)>& jacobian, Vec x0,
                  const NewtonOptions& opt) {
  auto solve = [&](const Vec& x, const Vec& f) {
    Vec rhs(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
    return solve_dense(jacobian(x), rhs);
  };
  return newton_loop(residual, solve, std::move(x0), opt);
}

Vec damped_newton_tridiagonal(const std::function<Vec(const Vec&)>& residual, Vec x0,
                              const NewtonOptions& opt) {
  auto solve = [&](const Vec& x, const Vec& f) {
    const std::size_t n = x.size();
    Vec lower(n - 1, 0.0), diag(n, 0.0), upper(n - 1, 0.0);
    Vec xp = x;
    // finite-difference columns over a 3-coloring: perturbing every third node keeps
    // each perturbed residual entry attributable to a single column
    for (int color = 0; color < 3; ++color) {
      Vec eps(n, 0.0);
      for (std::size_t j = color; j < n; j += 3) {
        eps[j] = 1e-7 * (1.0 + std::abs(x[j]));
        xp[j] = x[j] + eps[j];
      }
      Vec fp = residual(xp);
      for (std::size_t j = color; j < n; j += 3) {
        for (std::size_t i = (j == 0 ? 0 : j - 1); i <= j + 1 && i < n; ++i) {
          const double entry = (fp[i] - f[i]) / eps[j];
          if (i == j) {
            diag[j] = entry;
          } else if (i + 1 == j) {
            upper[i] = entry;
          } else {
            lower[i - 1] = entry;
          }
        }
        xp[j] = x[j];
      }
    }
    Vec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -f[i];
    return solve_tridiagonal(lower, diag, upper, rhs);
  };
  return newton_loop(residual, solve, std::move(x0), opt);
}

}  // namespace qlm
