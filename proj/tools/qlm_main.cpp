//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file qlm_main.cpp
//  \brief command-line front end
//
// Exit codes: 0 all asserted margins pass, 1 theorem-backed violation,
// 2 input/config error, 3 numerical nonconvergence.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "io/serialize.hpp"
#include "mass/energy.hpp"
#include "pipeline/pipeline.hpp"
#include "pipeline/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qlm::ConfigError("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  if (!out) throw qlm::ConfigError("cannot write " + dir + "/" + name);
  return out;
}

int classify(const qlm::Error& e) {
  if (dynamic_cast<const qlm::ViolationError*>(&e)) return kExitViolation;
  if (dynamic_cast<const qlm::ConfigError*>(&e) || dynamic_cast<const qlm::DataError*>(&e)) {
    return kExitConfig;
  }
  return kExitNumerical;
}

int run_schwarzschild(double M, const std::vector<double>& radii, double G, int grid_n,
                      const std::string& out_dir) {
  std::ostringstream csv;
  csv << "a,E_pipeline,m_closed_form,rel_diff\n";
  double prev = 1e300;
  bool monotone = true;
  double worst_rel = 0.0;
  for (double a : radii) {
    qlm::Scenario sc{(M > 0) ? qlm::schwarzschild_data(M, a / 20.0 + 2.0 * M, a, grid_n, G)
                             : qlm::flat_data(a / 20.0, a, grid_n, G),
                     qlm::PipelineMode::riemannian, qlm::FlowConfig{}, 0};
    qlm::PipelineRun run = qlm::run_pipeline(sc);
    if (!run.report.ok) {
      std::cerr << "schwarzschild: stage '" << run.report.failed_stage
                << "' failed: " << run.report.stages.back().detail << "\n";
      return 1;  // nonconvergent or violated stage
    }
    const double closed = (M > 0) ? qlm::schwarzschild_mass(M, a, G) : 0.0;
    const double rel = (M > 0) ? std::abs(run.report.E - closed) / closed
                               : std::abs(run.report.E);
    worst_rel = std::max(worst_rel, rel);
    if (run.report.E >= prev) monotone = false;
    prev = run.report.E;
    char row[160];
    std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.3e\n", a, run.report.E, closed, rel);
    csv << row;
  }
  std::cout << csv.str();
  if (!out_dir.empty()) open_out(out_dir, "schwarzschild.csv") << csv.str();
  if (M > 0 && !monotone) {
    std::cerr << "schwarzschild: E(a) failed to decrease monotonically\n";
    return 1;
  }
  std::printf("schwarzschild: worst closed-form deviation %.3e [%s]\n", worst_rel,
              monotone ? "monotone" : "NOT monotone");
  return 0;
}

int run_pipeline_cmd(const std::string& cfg_path, const std::string& out_dir, int grid_n,
                     double rmax, double G, std::uint64_t seed, bool have_seed) {
  nlohmann::json j = load_json(cfg_path);
  if (grid_n > 0) j["data"]["grid"]["n"] = grid_n;
  if (rmax > 0) j["flow"]["r_max"] = rmax;
  if (G > 0) j["data"]["G"] = G;
  if (have_seed) {
    j["seed"] = double(seed);
    if (j["data"].contains("preset") && j["data"]["preset"].value("name", "") == "perturbed") {
      j["data"]["preset"]["seed"] = double(seed);
    }
  }
  qlm::Scenario sc = qlm::scenario_from_json(j);
  qlm::PipelineRun run = qlm::run_pipeline(sc);

  const std::string dir = out_dir.empty() ? "." : out_dir;
  open_out(dir, "report.json") << qlm::report_to_json(run.report).dump(2) << "\n";
  if (run.foliation) {
    auto csv = open_out(dir, "flow.csv");
    qlm::write_flow_csv(csv, *run.foliation, run.flow, run.G);
  }
  std::printf("pipeline [%s]: E = %.9g, m0 = %.9g, m_inf = %.9g (%s)\n",
              run.report.mode.c_str(), run.report.E, run.report.m0, run.report.m_inf,
              run.report.ok ? "ok" : ("failed at " + run.report.failed_stage).c_str());
  if (run.report.ok) return kExitOk;
  for (const qlm::StageRecord& s : run.report.stages) {
    if (!s.ok) return s.error_class;
  }
  return kExitNumerical;
}

int run_flow_cmd(const std::string& cfg_path, const std::string& out_dir) {
  nlohmann::json j = load_json(cfg_path);
  if (!j.contains("base")) throw qlm::ConfigError("flow config: missing 'base' metric");
  qlm::AxisymMetric base = qlm::metric_from_json(j["base"]);
  qlm::ParallelFoliation fol{qlm::weyl_embed(base)};
  const int n = base.grid.size();

  std::vector<double> h0(n, 1.0);
  if (j.contains("h0")) {
    const nlohmann::json& jh = j["h0"];
    const std::string name = jh.value("name", "");
    if (jh.contains("values")) {
      h0 = jh["values"].get<std::vector<double>>();
      if (static_cast<int>(h0.size()) != n) {
        throw qlm::ConfigError("flow config: h0 values size mismatch");
      }
    } else if (name == "one" || name.empty()) {
      // flat seed
    } else if (name == "schwarzschild") {
      const double M = jh.value("M", 1.0);
      const double a = fol.mean_radius();
      if (!(a > 2.0 * M)) throw qlm::ConfigError("flow config: need base radius > 2M");
      std::fill(h0.begin(), h0.end(), 1.0 / std::sqrt(1.0 - 2.0 * M / a));
    } else if (name == "bump") {
      const double amp = jh.value("amp", 0.1);
      for (int i = 0; i < n; ++i) {
        const double th = base.grid.center(i);
        h0[i] = 1.0 + amp * std::exp(-th * th);
      }
    } else {
      throw qlm::ConfigError("flow config: unknown h0 preset '" + name + "'");
    }
  }
  const double r_max = j.value("r_max", 100.0 * fol.mean_radius());
  const int n_store = static_cast<int>(j.value("n_store", 200));
  qlm::Tolerances tol;
  std::vector<double> radii = qlm::geometric_radii(fol.mean_radius(), r_max, n_store);
  qlm::FlowState flow = qlm::flow_solve(fol, h0, r_max, tol, radii);

  const std::string dir = out_dir.empty() ? "." : out_dir;
  auto csv = open_out(dir, "flow.csv");
  qlm::write_flow_csv(csv, fol, flow, 1.0);
  if (r_max >= 50.0 * fol.mean_radius()) {
    qlm::MassAspect ma = qlm::mass_aspect(fol, flow, 1.0);
    std::printf("flow: m0 = %.9g, m_inf = %.9g, m_o = %.9g, kappa bound %.3e\n", ma.m0,
                ma.m_inf, ma.m_o, ma.kappa_bound);
  } else {
    std::printf("flow: stored %zu radii up to r = %.6g\n", flow.r.size(), flow.r.back());
  }
  return kExitOk;
}

int run_check_cmd(const std::string& suite, std::uint64_t seed, std::uint64_t samples,
                  int n_theta) {
  qlm::SuiteResult res;
  if (suite == "lemma6") {
    res = qlm::suite_dominance(seed, samples);
  } else if (suite == "minkowski") {
    res = qlm::suite_minkowski(n_theta);
  } else if (suite == "eq11") {
    res = qlm::suite_mass_monotonicity(seed, static_cast<int>(std::min<std::uint64_t>(
                                                 samples == 100000 ? 20 : samples, 1000)));
  } else if (suite == "gaussbonnet") {
    res = qlm::suite_gauss_bonnet(n_theta);
  } else {
    throw qlm::ConfigError("check: unknown suite '" + suite +
                           "' (expected lemma6|minkowski|eq11|gaussbonnet)");
  }
  std::printf("check %s: %s [%s]\n", suite.c_str(), res.summary.c_str(),
              res.pass ? "PASS" : "FAIL");
  return res.pass ? kExitOk : kExitViolation;
}

int run_embed_cmd(const std::string& cfg_path, const std::string& out_dir, double G) {
  qlm::AxisymMetric m = qlm::metric_from_json(load_json(cfg_path));
  qlm::ProfileEmbedding e = qlm::weyl_embed(m);
  const double margin = qlm::minkowski_margin(e);
  const double bound = qlm::horizon_energy_bound(e, G > 0 ? G : 1.0);
  if (!out_dir.empty()) {
    auto csv = open_out(out_dir, "embedding.csv");
    qlm::write_embedding_csv(csv, e);
  } else {
    qlm::write_embedding_csv(std::cout, e);
  }
  std::printf("embed: area %.9g, minkowski margin %.6e, horizon energy margin %.6e\n",
              e.area, margin, bound);
  return (margin >= -1e-9) ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-local mass verification toolkit"};
  app.require_subcommand(1);

  std::string config, out_dir;
  std::uint64_t seed = 1;
  bool have_seed = false;
  double G = 0.0, rmax = 0.0;
  int grid_n = 0, n_theta = 512;
  std::uint64_t samples = 100000;

  app.add_option("--seed", seed, "seed for all randomness")->each([&](std::string) {
    have_seed = true;
  });
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--G", G, "gravitational constant override");
  app.add_option("--grid-n", grid_n, "radial grid intervals override");
  app.add_option("--rmax", rmax, "flow range override");

  auto* sch = app.add_subcommand("schwarzschild", "closed-form anchor table E(a)");
  double M = 1.0;
  std::vector<double> radii{2.5, 5.0, 10.0, 100.0};
  sch->add_option("--M", M, "mass parameter (0 gives flat data)");
  sch->add_option("--a", radii, "boundary radii")->delimiter(',');

  auto* pip = app.add_subcommand("pipeline", "run a scenario and emit report + curves");
  pip->add_option("--config", config, "scenario json")->required();

  auto* flw = app.add_subcommand("flow", "run the exterior lapse flow on a base metric");
  flw->add_option("--config", config, "flow json")->required();

  auto* chk = app.add_subcommand("check", "verification suites");
  std::string suite;
  chk->add_option("suite", suite, "lemma6|minkowski|eq11|gaussbonnet")->required();
  chk->add_option("--samples", samples, "sample or profile count");
  chk->add_option("--n-theta", n_theta, "surface resolution");

  auto* emb = app.add_subcommand("embed", "embed a metric and report margins");
  emb->add_option("--config", config, "metric json")->required();

  CLI11_PARSE(app, argc, argv);

  std::printf("seed = %llu\n", static_cast<unsigned long long>(seed));
  try {
    if (sch->parsed()) {
      return run_schwarzschild(M, radii, (G > 0) ? G : 1.0, (grid_n > 0) ? grid_n : 2000,
                               out_dir);
    }
    if (pip->parsed()) return run_pipeline_cmd(config, out_dir, grid_n, rmax, G, seed, have_seed);
    if (flw->parsed()) return run_flow_cmd(config, out_dir);
    if (chk->parsed()) return run_check_cmd(suite, seed, samples, n_theta);
    if (emb->parsed()) return run_embed_cmd(config, out_dir, G);
  } catch (const qlm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
