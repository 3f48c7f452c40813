//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file serialize.hpp
//  \brief JSON schemas for data sets, metrics, scenarios, and reports; CSV emitters

#ifndef QLM_IO_SERIALIZE_HPP_
#define QLM_IO_SERIALIZE_HPP_

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pipeline/pipeline.hpp"
#include "surface/axisym.hpp"

namespace qlm {

//! {"grid": {"s_min","s_max","n"}, "G": g, "preset": {"name", ...params}} or
//! {"grid": ..., "G": g, "fields": {"A": [...], "p_rad": [...], "p_tan": [...], "B"?}}
//! "preset" and "fields" are mutually exclusive.
SphericalDataSet dataset_from_json(const nlohmann::json& j);
nlohmann::json dataset_to_json(const SphericalDataSet& d);

//! {"n_theta": n, "preset": {"name": "round"|"ellipsoid", ...}} or
//! {"n_theta": n, "A": [...], "B": [...]} with cell-centered samples
AxisymMetric metric_from_json(const nlohmann::json& j);

//! {"data": <dataset>, "mode": "riemannian"|"general",
//!  "flow": {"r_max", "n_store", "n_theta", "tolerances": {...}}, "seed": n}
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const QuasiLocalReport& rep, bool with_timestamp = true);

//! fixed header "r,m_r,h_min,h_max,rhs11,dmdr_fd"; radii in geometric units
void write_flow_csv(std::ostream& os, const ParallelFoliation& fol, const FlowState& flow,
                    double G);

//! header "theta,rho,z,kappa1,kappa2,H0"
void write_embedding_csv(std::ostream& os, const ProfileEmbedding& e);

}  // namespace qlm

#endif  // QLM_IO_SERIALIZE_HPP_
