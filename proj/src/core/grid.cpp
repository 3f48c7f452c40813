//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file grid.cpp

#include "core/grid.hpp"

#include <algorithm>
#include <string>

namespace qlm {

RadialGrid::RadialGrid(double s_min, double s_max, int n_intervals)
    : s_min_(s_min), s_max_(s_max), n_(n_intervals) {
  if (!(s_min >= 0.0) || !(s_max > s_min)) {
    throw ConfigError("RadialGrid: need 0 <= s_min < s_max, got [" + std::to_string(s_min) +
                      ", " + std::to_string(s_max) + "]");
  }
  if (n_intervals < 16) {
    throw ConfigError("RadialGrid: need at least 16 intervals, got " +
                      std::to_string(n_intervals));
  }
  ds_ = (s_max - s_min) / n_intervals;
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> out(npoints());
  for (int i = 0; i <= n_; ++i) out[i] = node(i);
  return out;
}

RadialField::RadialField(const RadialGrid& g, std::vector<double> values)
    : grid(g), v(std::move(values)) {
  if (static_cast<int>(v.size()) != g.npoints()) {
    throw ConfigError("RadialField: " + std::to_string(v.size()) + " values on a grid with " +
                      std::to_string(g.npoints()) + " nodes");
  }
}

RadialField::RadialField(const RadialGrid& g, double value)
    : grid(g), v(g.npoints(), value) {}

double RadialField::min() const { return *std::min_element(v.begin(), v.end()); }
double RadialField::max() const { return *std::max_element(v.begin(), v.end()); }

void assert_finite(const std::vector<double>& v, const char* label) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw DataError(std::string(label) + ": non-finite sample at index " + std::to_string(i));
    }
  }
}

void assert_finite(const RadialField& f, const char* label) { assert_finite(f.v, label); }

void Tolerances::validate() const {
  if (!(newton_tol > 0) || !(ode_rel_tol > 0) || !(ode_abs_tol > 0) || !(ineq_slack > 0)) {
    throw ConfigError("Tolerances: all entries must be strictly positive");
  }
  if (ineq_slack > 1e-8) {
    throw ConfigError("Tolerances: ineq_slack must not exceed 1e-8");
  }
}

}  // namespace qlm
