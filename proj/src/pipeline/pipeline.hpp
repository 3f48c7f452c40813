//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file pipeline.hpp
//  \brief end-to-end construction: constraint checks, graph and conformal deformations,
//         exterior flow, mass extraction, and the quasi-local energy chain

#ifndef QLM_PIPELINE_PIPELINE_HPP_
#define QLM_PIPELINE_PIPELINE_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conformal/conformal.hpp"
#include "data/initial_data.hpp"
#include "flow/quasispherical.hpp"
#include "jang/jang.hpp"
#include "mass/energy.hpp"

namespace qlm {

enum class PipelineMode { riemannian, general };

struct FlowConfig {
  double r_max = 0.0;  // 0 selects 100 * s_out; must be >= 50 * s_out
  int n_store = 200;   // stored radii (log-stretched)
  int n_theta = 1024;  // boundary-sphere resolution
  Tolerances tol;
};

struct Scenario {
  SphericalDataSet data;
  PipelineMode mode = PipelineMode::riemannian;
  FlowConfig flow;
  std::uint64_t seed = 0;  // recorded provenance; the pipeline itself is deterministic
};

struct StageRecord {
  std::string name;
  bool ok = false;
  std::string detail;
  // 0 ok, 1 theorem-backed violation, 2 input/config rejection, 3 numerical failure
  int error_class = 0;
};

struct QuasiLocalReport {
  // headline quantities
  double E, m0, m_inf, m_inf_quad, m_o, kappa_bound;
  // boundary data
  double area, H, P, H0, Hbar, Hhat, Xnu;
  // margins (signed; negative beyond slack means violation)
  double energy_condition_min;
  double graph_dominance_min;   // min of Rbar - 2|X|^2 + 2 div X      (general mode)
  double conformal_boundary;    // int Hhat - int (Hbar - <X,nu>)      (general mode)
  double chain_m0_minus_minf;
  double chain_E_minus_m0;
  double monotonicity_discrepancy;  // max | dm/dr - identity right side |
  // rigidity witnesses
  double sup_u_minus_1, sup_X;
  bool fits_consistent = false;
  bool mo_matches_minf = false;
  bool kappa_stable = false;
  // bookkeeping
  std::vector<StageRecord> stages;
  bool ok = false;
  std::string failed_stage;
  std::string inputs_digest;
  std::string mode;
};

//! report plus the artifacts needed for curve emission
struct PipelineRun {
  QuasiLocalReport report;
  std::shared_ptr<ParallelFoliation> foliation;  // null if the flow stage never ran
  FlowState flow;
  double G = 1.0;
};

//! Run the full sequence; stage errors are caught, tagged, and leave a partial report.
PipelineRun run_pipeline(const Scenario& sc);

struct ChainResult {
  bool pass = false;
  double margin_m0_minus_minf = 0.0;
  double margin_E_minus_m0 = 0.0;
  double E = 0.0;
  std::string detail;
};

//! asserts m_inf <= m0 <= E within slack and E >= -slack; near-zero E additionally
//! demands the flatness witnesses sup|u-1| and sup|X| below 1e-7.
ChainResult chain_check(const QuasiLocalReport& rep, double slack);

//! FNV-1a hash of a deterministic scenario summary (preset, params, fields, config)
std::string scenario_digest(const Scenario& sc);

}  // namespace qlm

#endif  // QLM_PIPELINE_PIPELINE_HPP_
