//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file foliation.cpp

#include "flow/foliation.hpp"

#include <cmath>

#include "core/grid.hpp"

namespace qlm {

void FoliationSlice::resize(int n) {
  H0r.resize(n);
  Rr.resize(n);
  Jr.resize(n);
  P_f.resize(n + 1);
}

ParallelFoliation::ParallelFoliation(ProfileEmbedding base) : base_(std::move(base)) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < base_.grid.size(); ++i) {
    num += std::sqrt(base_.radius2[i]) * base_.J[i];
    den += base_.J[i];
  }
  mean_radius_ = num / den;
}

void ParallelFoliation::slice(double r, FoliationSlice& out) const {
  const int n = base_.grid.size();
  out.resize(n);
  out.r = r;
  for (int i = 0; i < n; ++i) {
    const double e1 = 1.0 + r * base_.kappa1[i];
    const double e2 = 1.0 + r * base_.kappa2[i];
    const double k1r = base_.kappa1[i] / e1;
    const double k2r = base_.kappa2[i] / e2;
    out.H0r[i] = k1r + k2r;
    out.Rr[i] = 2.0 * k1r * k2r;
    out.Jr[i] = e1 * e2 * base_.J[i];
  }
  out.P_f[0] = out.P_f[n] = 0.0;
  for (int k = 1; k < n; ++k) {
    const double e1 = 1.0 + r * base_.k1_f[k];
    const double e2 = 1.0 + r * base_.k2_f[k];
    out.P_f[k] = base_.rho_f[k] * e2 / (base_.L_f[k] * e1);
  }
}

FoliationSlice ParallelFoliation::slice(double r) const {
  FoliationSlice s;
  slice(r, s);
  return s;
}

void ParallelFoliation::laplacian(const FoliationSlice& s, std::span<const double> h,
                                  std::span<double> out, std::vector<double>& flux) const {
  const int n = base_.grid.size();
  const double dth = base_.grid.spacing();
  flux.resize(n + 1);
  flux[0] = flux[n] = 0.0;
  for (int k = 1; k < n; ++k) flux[k] = s.P_f[k] * (h[k] - h[k - 1]) / dth;
  for (int i = 0; i < n; ++i) out[i] = (flux[i + 1] - flux[i]) / (s.Jr[i] * dth);
}

}  // namespace qlm
