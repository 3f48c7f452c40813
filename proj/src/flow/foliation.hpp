//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file foliation.hpp
//  \brief exterior parallel foliation of a convex base surface
//
// The leaf at distance r >= 0 from the base has principal curvatures
// kappa_i(r) = kappa_i / (1 + r kappa_i), mean curvature H0_r, scalar curvature
// R^r = 2 kappa_1(r) kappa_2(r), and area density (1+r kappa_1)(1+r kappa_2) J.
// The Laplacian of an axisymmetric field is kept in conservative flux form so the
// discrete divergence theorem holds exactly against the midpoint area weights.

#ifndef QLM_FLOW_FOLIATION_HPP_
#define QLM_FLOW_FOLIATION_HPP_

#include <span>
#include <vector>

#include "surface/axisym.hpp"

namespace qlm {

//! cell-centered geometry of one leaf, plus face diffusion coefficients
struct FoliationSlice {
  double r = 0.0;
  std::vector<double> H0r, Rr, Jr;  // size n
  std::vector<double> P_f;          // size n+1, zero on the axis faces
  void resize(int n);
};

class ParallelFoliation {
 public:
  explicit ParallelFoliation(ProfileEmbedding base);

  const ProfileEmbedding& base() const { return base_; }
  const ThetaGrid& grid() const { return base_.grid; }
  //! area-weighted mean radius of the base, used for asymptotic-range checks
  double mean_radius() const { return mean_radius_; }

  //! fill `out` with the leaf geometry at r (no allocation if already sized)
  void slice(double r, FoliationSlice& out) const;
  FoliationSlice slice(double r) const;

  //! conservative Laplacian of a cell field on the r-leaf; flux workspace is caller's
  void laplacian(const FoliationSlice& s, std::span<const double> h, std::span<double> out,
                 std::vector<double>& flux) const;

 private:
  ProfileEmbedding base_;
  double mean_radius_;
};

}  // namespace qlm

#endif  // QLM_FLOW_FOLIATION_HPP_
