//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file suites.hpp
//  \brief named verification suites shared by the CLI `check` subcommand and the
//         acceptance tests

#ifndef QLM_PIPELINE_SUITES_HPP_
#define QLM_PIPELINE_SUITES_HPP_

#include <cstdint>
#include <string>

namespace qlm {

struct SuiteResult {
  bool pass = false;
  std::string summary;
};

//! seeded sweep of the unit-normal dominance inequality; margins must stay >= -1e-12
SuiteResult suite_dominance(std::uint64_t seed, std::uint64_t n_samples);

//! round spheres have zero margin (|.| <= 1e-9); ellipsoids have positive margin that
//! agrees with a 4x-resolution quadrature oracle
SuiteResult suite_minkowski(int n_theta);

//! total curvature of round and ellipsoid metrics equals 4 pi within 1e-4
SuiteResult suite_gauss_bonnet(int n_theta);

//! seeded random positive lapse profiles on round and ellipsoid bases: the mass aspect
//! is non-increasing (slack 1e-9) and the discrepancy between dm/dr and the identity
//! right side converges at observed order >= 1.9 under step halving
SuiteResult suite_mass_monotonicity(std::uint64_t seed, int n_profiles);

}  // namespace qlm

#endif  // QLM_PIPELINE_SUITES_HPP_
