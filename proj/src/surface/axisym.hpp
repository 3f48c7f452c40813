//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file axisym.hpp
//  \brief axisymmetric metrics on S^2, Gauss curvature, and convex surface-of-revolution
//         isometric embeddings into Euclidean 3-space
//
// Fields live at cell centers theta_i = (i + 1/2) dtheta of a uniform grid on [0, pi];
// the poles are never sampled. Smooth axisymmetric functions extend across the poles
// with a definite parity, which supplies ghost values for high-order stencils.

#ifndef QLM_SURFACE_AXISYM_HPP_
#define QLM_SURFACE_AXISYM_HPP_

#include <span>
#include <vector>

#include "core/error.hpp"

namespace qlm {

//! Uniform cell-centered grid on [0, pi].
class ThetaGrid {
 public:
  explicit ThetaGrid(int n_cells);
  int size() const { return n_; }
  double spacing() const { return dth_; }
  double center(int i) const { return (i + 0.5) * dth_; }
  double face(int i) const { return i * dth_; }
  friend bool operator==(const ThetaGrid& a, const ThetaGrid& b) { return a.n_ == b.n_; }

 private:
  int n_;
  double dth_;
};

enum class Parity { even, odd };

//! Sixth-order centered first derivative with parity ghosts at both poles.
std::vector<double> theta_derivative(const ThetaGrid& g, std::span<const double> f, Parity p);

//! Fourth-order interpolation of cell data onto the n+1 faces, parity ghosts at poles.
//! Odd fields get exact zeros on the pole faces.
std::vector<double> to_faces(const ThetaGrid& g, std::span<const double> f, Parity p);

//! Positive-curvature axisymmetric metric A dtheta^2 + B dphi^2 on S^2.
struct AxisymMetric {
  ThetaGrid grid;
  std::vector<double> Atheta, Btheta;
  void validate() const;  // positivity and pole regularity B ~ A(0) theta^2
};

//! Intrinsic Gauss curvature of an axisymmetric metric.
std::vector<double> gauss_curvature(const AxisymMetric& m);

//! Convex surface of revolution realizing the metric isometrically.
struct ProfileEmbedding {
  ThetaGrid grid;
  std::vector<double> Atheta, Btheta;   // the embedded metric
  std::vector<double> rho, drho;        // distance to the axis and d(rho)/d(theta)
  std::vector<double> z, zp;            // height (centered) and dz/d(theta)
  std::vector<double> kappa1, kappa2;   // principal curvatures: meridian, parallel
  std::vector<double> H0;               // kappa1 + kappa2
  std::vector<double> J;                // area-element density sqrt(A B)
  std::vector<double> support;          // <X, N> of the centered position vector
  std::vector<double> radius2;          // |X|^2
  std::vector<double> rho_f, L_f, k1_f, k2_f;  // face samples for exterior foliations
  double area = 0.0;                    // midpoint-rule total area
};

//! Embed a positive-curvature axisymmetric metric; throws DataError when K <= 0 or
//! when A - (d rho/d theta)^2 <= 0 (no convex realization about this axis).
ProfileEmbedding weyl_embed(const AxisymMetric& m);

//! Midpoint-rule integral of a cell-centered density f over the surface (measure dsigma).
//! This rule is the exact dual of the conservative Laplacian used by the exterior flow.
double surface_integral(const ThetaGrid& g, std::span<const double> f,
                        std::span<const double> J);

//! Midpoint rule with endpoint Euler-Maclaurin correction; for standalone geometric
//! functionals where no discrete-flux compatibility is needed.
double surface_integral_corrected(const ThetaGrid& g, std::span<const double> f,
                                  std::span<const double> J);

//! integral H0 dsigma - sqrt(16 pi Area); nonnegative for convex bodies, zero exactly
//! on round spheres.
double minkowski_margin(const ProfileEmbedding& e);

// ---- presets ---------------------------------------------------------------------------

AxisymMetric round_metric(double a, int n_cells);
//! metric induced on the ellipsoid with semi-axes (a, a, c)
AxisymMetric ellipsoid_metric(double a, double c, int n_cells);

}  // namespace qlm

#endif  // QLM_SURFACE_AXISYM_HPP_
