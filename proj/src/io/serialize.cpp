//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file serialize.cpp

#include "io/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

namespace qlm {

using nlohmann::json;

namespace {

double get_num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(std::string("json: missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

std::vector<double> get_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ConfigError(std::string("json: missing array field '") + key + "'");
  }
  return j[key].get<std::vector<double>>();
}

void put_csv_row(std::ostream& os, std::initializer_list<double> vals) {
  char buf[40];
  bool first = true;
  for (double v : vals) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    if (!first) os << ',';
    os << buf;
    first = false;
  }
  os << '\n';
}

}  // namespace

SphericalDataSet dataset_from_json(const json& j) {
  if (!j.contains("grid")) throw ConfigError("dataset json: missing 'grid'");
  const json& jg = j["grid"];
  RadialGrid grid(get_num(jg, "s_min"), get_num(jg, "s_max"),
                  static_cast<int>(get_num(jg, "n")));
  const double G = j.contains("G") ? get_num(j, "G") : 1.0;

  const bool has_preset = j.contains("preset");
  const bool has_fields = j.contains("fields");
  if (has_preset == has_fields) {
    throw ConfigError("dataset json: exactly one of 'preset' or 'fields' is required");
  }
  if (has_preset) {
    const json& jp = j["preset"];
    const std::string name = jp.value("name", "");
    if (name == "flat") {
      return flat_data(grid.s_min(), grid.s_max(), grid.intervals(), G);
    }
    if (name == "schwarzschild") {
      return schwarzschild_data(get_num(jp, "M"), grid.s_min(), grid.s_max(),
                                grid.intervals(), G);
    }
    if (name == "isotropic_schwarzschild") {
      return isotropic_schwarzschild(get_num(jp, "M"), grid.s_min(), grid.s_max(),
                                     grid.intervals(), G);
    }
    if (name == "perturbed") {
      if (grid.s_min() != 0.0) {
        throw ConfigError("dataset json: perturbed preset needs s_min = 0");
      }
      return perturbed_data(static_cast<std::uint64_t>(get_num(jp, "seed")),
                            get_num(jp, "amplitude"), grid.s_max(), grid.intervals(), G);
    }
    throw ConfigError("dataset json: unknown preset '" + name + "'");
  }
  const json& jf = j["fields"];
  std::vector<double> B;
  if (jf.contains("B")) B = get_array(jf, "B");
  return dataset_from_fields(grid, get_array(jf, "A"), get_array(jf, "p_rad"),
                             get_array(jf, "p_tan"), G, std::move(B));
}

json dataset_to_json(const SphericalDataSet& d) {
  json j;
  j["grid"] = {{"s_min", d.grid.s_min()}, {"s_max", d.grid.s_max()}, {"n", d.grid.intervals()}};
  j["G"] = d.G;
  if (!d.preset.empty()) {
    json jp;
    jp["name"] = d.preset;
    for (const auto& [k, v] : d.preset_params) {
      if (k != "s_in" && k != "s_out" && k != "n" && k != "G") jp[k] = v;
    }
    j["preset"] = jp;
  } else {
    j["fields"] = {{"A", d.A.v}, {"p_rad", d.p_rad.v}, {"p_tan", d.p_tan.v}};
    if (!d.areal) j["fields"]["B"] = d.B.v;
  }
  return j;
}

AxisymMetric metric_from_json(const json& j) {
  const int n = static_cast<int>(j.value("n_theta", 256));
  if (j.contains("preset")) {
    const json& jp = j["preset"];
    const std::string name = jp.value("name", "");
    if (name == "round") return round_metric(get_num(jp, "a"), n);
    if (name == "ellipsoid") return ellipsoid_metric(get_num(jp, "a"), get_num(jp, "c"), n);
    throw ConfigError("metric json: unknown preset '" + name + "'");
  }
  ThetaGrid g(n);
  AxisymMetric m{g, get_array(j, "A"), get_array(j, "B")};
  m.validate();
  return m;
}

Scenario scenario_from_json(const json& j) {
  if (!j.contains("data")) throw ConfigError("scenario json: missing 'data'");
  Scenario sc{dataset_from_json(j["data"]), PipelineMode::riemannian, FlowConfig{}, 0};
  const std::string mode = j.value("mode", "riemannian");
  if (mode == "general") {
    sc.mode = PipelineMode::general;
  } else if (mode != "riemannian") {
    throw ConfigError("scenario json: mode must be 'riemannian' or 'general'");
  }
  if (j.contains("flow")) {
    const json& jf = j["flow"];
    sc.flow.r_max = jf.value("r_max", 0.0);
    sc.flow.n_store = static_cast<int>(jf.value("n_store", 200));
    sc.flow.n_theta = static_cast<int>(jf.value("n_theta", 1024));
    if (jf.contains("tolerances")) {
      const json& jt = jf["tolerances"];
      sc.flow.tol.newton_tol = jt.value("newton_tol", sc.flow.tol.newton_tol);
      sc.flow.tol.ode_rel_tol = jt.value("ode_rel_tol", sc.flow.tol.ode_rel_tol);
      sc.flow.tol.ode_abs_tol = jt.value("ode_abs_tol", sc.flow.tol.ode_abs_tol);
      sc.flow.tol.ineq_slack = jt.value("ineq_slack", sc.flow.tol.ineq_slack);
    }
  }
  sc.seed = static_cast<std::uint64_t>(j.value("seed", 0.0));
  return sc;
}

json report_to_json(const QuasiLocalReport& rep, bool with_timestamp) {
  json j;
  j["schema"] = "qlm-report/1";
  j["mode"] = rep.mode;
  j["inputs_digest"] = rep.inputs_digest;
  j["ok"] = rep.ok;
  j["failed_stage"] = rep.failed_stage.empty() ? json(nullptr) : json(rep.failed_stage);
  j["quantities"] = {{"E", rep.E},
                     {"m0", rep.m0},
                     {"m_inf", rep.m_inf},
                     {"m_inf_quadratic", rep.m_inf_quad},
                     {"m_o", rep.m_o},
                     {"kappa_bound", rep.kappa_bound},
                     {"area", rep.area},
                     {"H", rep.H},
                     {"P", rep.P},
                     {"H0", rep.H0},
                     {"Hbar", rep.Hbar},
                     {"Hhat", rep.Hhat},
                     {"Xnu", rep.Xnu}};
  j["margins"] = {{"energy_condition_min", rep.energy_condition_min},
                  {"graph_dominance_min", rep.graph_dominance_min},
                  {"conformal_boundary", rep.conformal_boundary},
                  {"chain_m0_minus_minf", rep.chain_m0_minus_minf},
                  {"chain_E_minus_m0", rep.chain_E_minus_m0},
                  {"monotonicity_discrepancy", rep.monotonicity_discrepancy}};
  j["rigidity"] = {{"sup_u_minus_1", rep.sup_u_minus_1}, {"sup_X", rep.sup_X}};
  j["consistency"] = {{"fits_consistent", rep.fits_consistent},
                      {"mo_matches_minf", rep.mo_matches_minf},
                      {"kappa_stable", rep.kappa_stable}};
  json stages = json::array();
  for (const StageRecord& s : rep.stages) {
    stages.push_back({{"stage", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  }
  j["stages"] = stages;
  if (with_timestamp) {
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["generated_at"] = buf;
  }
  return j;
}

void write_flow_csv(std::ostream& os, const ParallelFoliation& fol, const FlowState& flow,
                    double G) {
  os << "r,m_r,h_min,h_max,rhs11,dmdr_fd\n";
  std::vector<double> m = mass_profile(fol, flow, G);
  const std::size_t K = flow.r.size();
  for (std::size_t k = 0; k < K; ++k) {
    double hmin = flow.h[k][0], hmax = flow.h[k][0];
    for (double v : flow.h[k]) {
      hmin = std::min(hmin, v);
      hmax = std::max(hmax, v);
    }
    const double rate = mass_rate_at(fol, flow.r[k], flow.h[k], G);
    double dmdr;
    if (k == 0) {
      dmdr = (m[1] - m[0]) / (flow.r[1] - flow.r[0]);
    } else if (k + 1 == K) {
      dmdr = (m[K - 1] - m[K - 2]) / (flow.r[K - 1] - flow.r[K - 2]);
    } else {
      const double hm = flow.r[k] - flow.r[k - 1], hp = flow.r[k + 1] - flow.r[k];
      dmdr = (hm * hm * m[k + 1] - hp * hp * m[k - 1] - (hm * hm - hp * hp) * m[k]) /
             (hm * hp * (hm + hp));
    }
    put_csv_row(os, {flow.r[k], m[k], hmin, hmax, rate, dmdr});
  }
}

void write_embedding_csv(std::ostream& os, const ProfileEmbedding& e) {
  os << "theta,rho,z,kappa1,kappa2,H0\n";
  for (int i = 0; i < e.grid.size(); ++i) {
    put_csv_row(os, {e.grid.center(i), e.rho[i], e.z[i], e.kappa1[i], e.kappa2[i], e.H0[i]});
  }
}

}  // namespace qlm
