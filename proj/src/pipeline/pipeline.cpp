//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file pipeline.cpp

#include "pipeline/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "core/ops.hpp"
#include "surface/axisym.hpp"

namespace qlm {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void init_report(QuasiLocalReport& r) {
  r.E = r.m0 = r.m_inf = r.m_inf_quad = r.m_o = r.kappa_bound = kNan;
  r.area = r.H = r.P = r.H0 = r.Hbar = r.Hhat = r.Xnu = kNan;
  r.energy_condition_min = r.graph_dominance_min = r.conformal_boundary = kNan;
  r.chain_m0_minus_minf = r.chain_E_minus_m0 = r.monotonicity_discrepancy = kNan;
  r.sup_u_minus_1 = r.sup_X = kNan;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void append_num(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g;", v);
  s += buf;
}

}  // namespace

std::string scenario_digest(const Scenario& sc) {
  std::string acc = sc.data.preset + "|";
  for (const auto& [k, v] : sc.data.preset_params) {
    acc += k + "=";
    append_num(acc, v);
  }
  if (sc.data.preset.empty()) {
    for (int i = 0; i < sc.data.A.size(); ++i) {
      append_num(acc, sc.data.A[i]);
      append_num(acc, sc.data.B[i]);
      append_num(acc, sc.data.p_rad[i]);
      append_num(acc, sc.data.p_tan[i]);
    }
  }
  acc += (sc.mode == PipelineMode::general) ? "general" : "riemannian";
  append_num(acc, sc.data.G);
  append_num(acc, sc.flow.r_max);
  append_num(acc, double(sc.flow.n_store));
  append_num(acc, double(sc.flow.n_theta));
  append_num(acc, double(sc.seed));
  char out[20];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(fnv1a(acc)));
  return std::string("fnv1a:") + out;
}

ChainResult chain_check(const QuasiLocalReport& rep, double slack) {
  ChainResult cr;
  cr.margin_m0_minus_minf = rep.m0 - rep.m_inf;
  cr.margin_E_minus_m0 = rep.E - rep.m0;
  cr.E = rep.E;
  cr.pass = true;
  if (!(cr.margin_m0_minus_minf >= -slack)) {
    cr.pass = false;
    cr.detail += "m_inf exceeds m(0); ";
  }
  if (!(cr.margin_E_minus_m0 >= -slack)) {
    cr.pass = false;
    cr.detail += "m(0) exceeds E; ";
  }
  if (!(rep.E >= -slack)) {
    cr.pass = false;
    cr.detail += "E is negative; ";
  }
  if (rep.E <= 1e-9) {
    // rigidity: vanishing energy forces the deformations to be identities
    if (!(rep.sup_u_minus_1 <= 1e-7) || !(rep.sup_X <= 1e-7)) {
      cr.pass = false;
      cr.detail += "E ~ 0 without flatness witnesses; ";
    } else {
      cr.detail += "rigidity case: flat witnesses confirmed; ";
    }
  }
  return cr;
}

PipelineRun run_pipeline(const Scenario& sc) {
  PipelineRun run;
  QuasiLocalReport& rep = run.report;
  init_report(rep);
  rep.mode = (sc.mode == PipelineMode::general) ? "general" : "riemannian";
  rep.inputs_digest = scenario_digest(sc);
  run.G = sc.data.G;

  auto stage = [&](const char* name, auto&& body) {
    if (!rep.failed_stage.empty()) return;
    StageRecord rec;
    rec.name = name;
    try {
      rec.detail = body();
      rec.ok = true;
    } catch (const Error& e) {
      rec.ok = false;
      rec.detail = e.what();
      rep.failed_stage = name;
      if (dynamic_cast<const ViolationError*>(&e) != nullptr) {
        rec.error_class = 1;
      } else if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
                 dynamic_cast<const DataError*>(&e) != nullptr) {
        rec.error_class = 2;
      } else {
        rec.error_class = 3;  // nonconvergence, breakdown, linear-algebra trouble
      }
    }
    rep.stages.push_back(std::move(rec));
  };

  const Tolerances& tol = sc.flow.tol;
  const double slack = tol.ineq_slack;
  const double s_out = sc.data.grid.s_max();

  stage("validate", [&]() -> std::string {
    sc.data.validate();
    tol.validate();
    if (!sc.data.areal) {
      throw DataError("pipeline requires areal-gauge data (B = s)");
    }
    if (sc.mode == PipelineMode::riemannian) {
      const double pmax = std::max(std::abs(sc.data.p_rad.min()),
                                   std::abs(sc.data.p_rad.max()));
      const double tmax = std::max(std::abs(sc.data.p_tan.min()),
                                   std::abs(sc.data.p_tan.max()));
      if (std::max(pmax, tmax) > 1e-13) {
        throw ConfigError("riemannian mode requires p = 0");
      }
    }
    const double r_max = (sc.flow.r_max > 0) ? sc.flow.r_max : 100.0 * s_out;
    if (r_max < 50.0 * s_out) {
      throw ConfigError("flow range must reach 50x the boundary radius");
    }
    if (sc.flow.n_store < 120) throw ConfigError("need at least 120 stored radii");
    return "";
  });

  ConstraintDensities cd{RadialField(sc.data.grid, 0.0), RadialField(sc.data.grid, 0.0)};
  stage("constraints", [&]() -> std::string {
    cd = constraint_densities(sc.data);
    return "";
  });

  stage("energy_condition", [&]() -> std::string {
    RadialField margin = energy_condition_margin(cd);
    rep.energy_condition_min = margin.min();
    if (rep.energy_condition_min < -slack) {
      throw DataError("local energy condition violated, min margin " +
                      std::to_string(rep.energy_condition_min));
    }
    return "min margin " + std::to_string(rep.energy_condition_min);
  });

  stage("horizon_scan", [&]() -> std::string {
    auto roots = horizon_scan(sc.data);
    if (!roots.empty()) {
      throw DataError("apparent horizon at s = " + std::to_string(roots.front().radius));
    }
    return "no marginal spheres";
  });

  // graph + conformal deformations (identity in riemannian mode)
  double denom_seed = kNan;  // Hbar - <X,nu>, the general-mode lapse denominator
  stage("deformation", [&]() -> std::string {
    if (sc.mode == PipelineMode::riemannian) {
      rep.sup_u_minus_1 = 0.0;
      rep.sup_X = 0.0;
      return "time-symmetric data: graph and conformal deformations are identities";
    }
    JangSolution js = jang_solve(sc.data, tol);
    GraphData gd = graph_geometry(sc.data, js);
    RadialField margin = graph_curvature_margin(gd);
    rep.graph_dominance_min = margin.min();
    if (rep.graph_dominance_min < -slack) {
      throw ViolationError("graph curvature dominance violated, min margin " +
                      std::to_string(rep.graph_dominance_min));
    }
    ConformalSolution cs = solve_conformal(gd, tol);
    rep.conformal_boundary = conformal_boundary_margin(gd, cs);
    const double area = 4.0 * 3.14159265358979323846 * s_out * s_out;
    if (rep.conformal_boundary < -slack * area) {
      throw ViolationError("conformal boundary inequality violated, margin " +
                      std::to_string(rep.conformal_boundary));
    }
    rep.Hbar = gd.Hbar;
    rep.Hhat = cs.Hhat;
    rep.Xnu = gd.Xnu;
    double su = 0.0, sx = 0.0;
    for (int i = 0; i < cs.u.size(); ++i) su = std::max(su, std::abs(cs.u[i] - 1.0));
    for (int i = 0; i < gd.X_rad.size(); ++i) sx = std::max(sx, std::abs(gd.X_rad[i]));
    rep.sup_u_minus_1 = su;
    rep.sup_X = sx;
    denom_seed = gd.Hbar - gd.Xnu;
    return "sup|u-1| = " + std::to_string(su) + ", sup|X| = " + std::to_string(sx);
  });

  BoundaryGeometry bg{};
  stage("boundary", [&]() -> std::string {
    bg = boundary_geometry(sc.data);
    rep.area = bg.area;
    rep.H = bg.H;
    rep.P = bg.P;
    rep.H0 = bg.H0;
    if (sc.mode == PipelineMode::riemannian) {
      rep.Hbar = bg.H;
      rep.Hhat = bg.H;
      rep.Xnu = 0.0;
      denom_seed = bg.H;
    }
    return "";
  });

  std::shared_ptr<ProfileEmbedding> emb;
  stage("embedding", [&]() -> std::string {
    AxisymMetric bm = round_metric(s_out, sc.flow.n_theta);
    emb = std::make_shared<ProfileEmbedding>(weyl_embed(bm));
    return "";
  });

  stage("flow", [&]() -> std::string {
    if (!(denom_seed > 0)) {
      throw DataError("initial lapse denominator is not positive");
    }
    run.foliation = std::make_shared<ParallelFoliation>(*emb);
    const double r_max = (sc.flow.r_max > 0) ? sc.flow.r_max : 100.0 * s_out;
    std::vector<double> h0(emb->H0.size());
    for (std::size_t i = 0; i < h0.size(); ++i) h0[i] = emb->H0[i] / denom_seed;
    std::vector<double> radii =
        geometric_radii(run.foliation->mean_radius(), r_max, sc.flow.n_store);
    const FlowSeed seed_kind = (sc.mode == PipelineMode::general) ? FlowSeed::general
                                                                  : FlowSeed::riemannian;
    run.flow = flow_solve(*run.foliation, std::move(h0), r_max, tol, radii, seed_kind,
                          sc.flow.n_theta >= 4096);
    return std::to_string(run.flow.rk_steps) + " accepted steps";
  });

  stage("mass_aspect", [&]() -> std::string {
    MassAspect ma = mass_aspect(*run.foliation, run.flow, run.G);
    rep.m0 = ma.m0;
    rep.m_inf = ma.m_inf;
    rep.m_inf_quad = ma.m_inf_quad;
    rep.m_o = ma.m_o;
    rep.kappa_bound = ma.kappa_bound;
    rep.fits_consistent = ma.fits_consistent;
    rep.mo_matches_minf = ma.mo_matches_minf;
    if (!ma.fits_consistent) {
      throw NonconvergenceError("asymptotic extrapolations disagree beyond 1e-3");
    }
    return "";
  });

  stage("monotonicity", [&]() -> std::string {
    rep.monotonicity_discrepancy = monotonicity_check(*run.foliation, run.flow, run.G);
    return "max discrepancy " + std::to_string(rep.monotonicity_discrepancy);
  });

  stage("asymptotics", [&]() -> std::string {
    Asymptotics as = asymptotics_check(*run.foliation, run.flow);
    rep.kappa_stable = as.kappa_stable;
    return "kappa bound " + std::to_string(as.kappa_bound) +
           (as.kappa_stable ? " (stable)" : " (not yet stable)");
  });

  stage("energy", [&]() -> std::string {
    const double H0_int = surface_integral(emb->grid, emb->H0, emb->J);
    rep.E = energy(bg, H0_int, emb->area, run.G);
    return "E = " + std::to_string(rep.E);
  });

  stage("chain", [&]() -> std::string {
    ChainResult cr = chain_check(rep, slack);
    rep.chain_m0_minus_minf = cr.margin_m0_minus_minf;
    rep.chain_E_minus_m0 = cr.margin_E_minus_m0;
    if (!cr.pass) throw ViolationError("chain violation: " + cr.detail);
    return cr.detail;
  });

  rep.ok = rep.failed_stage.empty();
  return run;
}

}  // namespace qlm
