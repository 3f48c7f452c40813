//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file grid.hpp
//  \brief uniform radial grids, sampled fields, and solver tolerances

#ifndef QLM_CORE_GRID_HPP_
#define QLM_CORE_GRID_HPP_

#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace qlm {

//! Uniform node-centered grid on [s_min, s_max] with n intervals (n+1 nodes).
class RadialGrid {
 public:
  RadialGrid(double s_min, double s_max, int n_intervals);

  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }
  int intervals() const { return n_; }
  int npoints() const { return n_ + 1; }
  double spacing() const { return ds_; }
  //! i-th node; endpoints are exact
  double node(int i) const {
    if (i == 0) return s_min_;
    if (i == n_) return s_max_;
    return s_min_ + ds_ * i;
  }
  std::vector<double> nodes() const;

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.s_min_ == b.s_min_ && a.s_max_ == b.s_max_ && a.n_ == b.n_;
  }

 private:
  double s_min_, s_max_, ds_;
  int n_;
};

//! One real sample per grid node.
struct RadialField {
  RadialGrid grid;
  std::vector<double> v;

  RadialField(const RadialGrid& g, std::vector<double> values);
  //! constant field
  RadialField(const RadialGrid& g, double value);
  //! sample a callable at the nodes
  template <typename F>
  static RadialField sample(const RadialGrid& g, F&& f) {
    std::vector<double> vals(g.npoints());
    for (int i = 0; i < g.npoints(); ++i) vals[i] = f(g.node(i));
    return RadialField(g, std::move(vals));
  }

  int size() const { return static_cast<int>(v.size()); }
  double operator[](int i) const { return v[i]; }
  double& operator[](int i) { return v[i]; }
  double front() const { return v.front(); }
  double back() const { return v.back(); }
  double min() const;
  double max() const;
};

//! throws DataError if any sample is non-finite
void assert_finite(const RadialField& f, const char* label);
void assert_finite(const std::vector<double>& v, const char* label);

//! Solver tolerances threaded through the pipeline.
struct Tolerances {
  double newton_tol = 1e-11;   // residual sup-norm for Newton solves
  double ode_rel_tol = 1e-10;  // adaptive stepper, relative
  double ode_abs_tol = 1e-12;  // adaptive stepper, absolute
  double ineq_slack = 1e-8;    // allowed negative margin in inequality checks

  void validate() const;
};

}  // namespace qlm

#endif  // QLM_CORE_GRID_HPP_
