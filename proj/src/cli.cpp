#include "vps/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "vps/csvio.hpp"
#include "vps/nonuniqueness.hpp"
#include "vps/reconstruct.hpp"
#include "vps/runner.hpp"

namespace vps::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_json_file(const fs::path& p, const json& j) {
  auto os = open_output(p);
  os << j.dump(2) << '\n';
}

json check_json(const ConditionReport::Check& c) {
  return {{"pass", c.pass}, {"worst_location", c.worst_location}, {"worst_value", c.worst_value}};
}

json conditions_json(const ConditionReport& rep) {
  json j;
  j["normalization"] = check_json(rep.normalization);
  j["monotonicity"] = check_json(rep.monotonicity);
  j["subdifferential"] = check_json(rep.subdifferential);
  j["growth"] = check_json(rep.growth);
  j["sigma"] = rep.sigma;
  j["alpha"] = rep.alpha;
  j["c0"] = rep.c0;
  j["c1"] = rep.c1;
  j["c2"] = rep.c2;
  j["all_pass"] = rep.all_pass();
  return j;
}

json validation_json(const ValidationReport& rep) {
  return {{"pass", rep.pass()},
          {"normalization_ok", rep.normalization_ok},
          {"positivity_ok", rep.positivity_ok},
          {"monotone_ok", rep.monotone_ok},
          {"decay_ok", rep.decay_ok},
          {"normalization", rep.normalization},
          {"fitted_decay_constant", rep.fitted_decay_constant}};
}

json history_json(const std::vector<IterationRecord>& hist) {
  json arr = json::array();
  for (const auto& rec : hist)
    arr.push_back({{"iter", rec.iter}, {"update_norm", rec.update_norm}, {"damping", rec.damping}});
  return arr;
}

json provenance_json(const Scenario& sc) {
  json j;
  j["scenario"] = sc.to_json();
  j["versions"] = {{"fftw", std::string(fftw_version)},
                   {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                   {"compiler", std::string(__VERSION__)}};
  return j;
}

json solution_json(const RunResult& rr, const GBundle& gb, const Scenario& sc) {
  const Solution& sol = rr.sol;
  json j;
  j["iterations"] = sol.iterations;
  j["final_update_norm"] = sol.final_update_norm;
  j["pde_residual"] = sol.pde_residual;
  j["min_q"] = min_value(sol.Q);
  j["max_q"] = sup_norm(sol.Q) == 0.0 ? 0.0 : [&] {
    double m = sol.Q.values[0];
    for (double v : sol.Q.values) m = std::max(m, v);
    return m;
  }();
  j["cap_was_active"] = sol.cap_was_active;
  j["comparison_slack"] = sol.comparison_slack;
  j["sigma"] = sol.sigma;
  j["theta"] = sol.theta;
  j["c_beta"] = gb.c_beta;
  j["charge_neutrality_defect"] = rr.neutrality_defect;
  j["h1_removed_mean"] = sol.h1_removed_mean;
  j["h1_gauge_offset"] = sol.h1_gauge_offset;
  j["l_sqrt_sigma"] = sc.grid->box_size * std::sqrt(sol.sigma);
  j["h_sqrt_sigma"] = sc.grid->box_size / sc.grid->n * std::sqrt(sol.sigma);
  j["history"] = history_json(sol.history);
  j["conditions"] = conditions_json(gb.conditions);
  j["provenance"] = provenance_json(sc);
  return j;
}

void write_field(const fs::path& p, const ScalarField& f) {
  auto os = open_output(p);
  write_scalar_field_csv(os, f);
}

void write_plane_csv(const fs::path& p, const char* value_name, const ScalarField& grid_ref,
                     double z, const std::function<double(double, double)>& eval) {
  auto os = open_output(p);
  os << "x,y," << value_name << '\n';
  char buf[96];
  const double h = grid_ref.h();
  for (int i = 0; i < grid_ref.n; ++i) {
    for (int jj = 0; jj < grid_ref.n; ++jj) {
      const double x = i * h, y = jj * h;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, y, eval(x, y));
      os << buf;
    }
  }
  (void)z;
}

}  // namespace

int cmd_gcheck(const Scenario& sc) {
  GBundle gb = build_gtransform(sc);
  {
    auto os = open_output(fs::path(sc.output_dir) / "gtable.csv");
    gb.g->write_csv(os);
  }
  json j;
  j["beta"] = gb.g->profile().beta();
  j["c_beta"] = gb.c_beta;
  j["conditions"] = conditions_json(gb.conditions);
  j["profile_validation"] = validation_json(gb.profile_report);
  j["provenance"] = provenance_json(sc);
  write_json_file(fs::path(sc.output_dir) / "gcheck.json", j);
  return gb.conditions.all_pass() && gb.profile_report.pass() ? 0 : 1;
}

int cmd_solve(const Scenario& sc) {
  sc.require_grid();
  GBundle gb = build_gtransform(sc);
  RunResult rr;
  try {
    rr = run_solve(sc, gb);
  } catch (const ConvergenceError& e) {
    json j;
    j["error"] = e.what();
    j["history"] = history_json(e.history);
    write_json_file(fs::path(sc.output_dir) / "history.json", j);
    throw;
  }
  write_field(fs::path(sc.output_dir) / "Q.csv", rr.sol.Q);
  write_field(fs::path(sc.output_dir) / "R.csv", rr.sol.R);
  write_field(fs::path(sc.output_dir) / "S.csv", rr.sol.S->node_values());
  write_json_file(fs::path(sc.output_dir) / "solution.json", solution_json(rr, gb, sc));
  return 0;
}

int cmd_radial(const Scenario& sc) {
  sc.require_radial();
  GBundle gb = build_gtransform(sc);
  RadialSolution rs;
  try {
    rs = run_radial(sc, gb);
  } catch (const ConvergenceError& e) {
    json j;
    j["error"] = e.what();
    j["history"] = history_json(e.history);
    write_json_file(fs::path(sc.output_dir) / "history.json", j);
    throw;
  }
  {
    auto os = open_output(fs::path(sc.output_dir) / "radial.csv");
    write_radial_csv(os, rs);
  }
  json j;
  j["iterations"] = rs.iterations;
  j["final_update_norm"] = rs.final_update_norm;
  j["pde_residual"] = rs.pde_residual;
  double minq = rs.Q.values[0], maxq = rs.Q.values[0];
  for (double v : rs.Q.values) {
    minq = std::min(minq, v);
    maxq = std::max(maxq, v);
  }
  j["min_q"] = minq;
  j["max_q"] = maxq;
  j["cap_was_active"] = rs.cap_was_active;
  j["comparison_slack"] = rs.comparison_slack;
  j["sigma"] = rs.sigma;
  j["theta"] = rs.theta;
  j["c_beta"] = gb.c_beta;
  j["charge_neutrality_defect"] = charge_neutrality(rs, *gb.g);
  j["history"] = history_json(rs.history);
  j["conditions"] = conditions_json(gb.conditions);
  j["provenance"] = provenance_json(sc);
  write_json_file(fs::path(sc.output_dir) / "radial.json", j);
  return 0;
}

int cmd_sample(const Scenario& sc, const SliceSpec& slice) {
  sc.require_grid();
  GBundle gb = build_gtransform(sc);
  const RunResult rr = run_solve(sc, gb);
  const PhaseSpaceSampler sampler(rr.sol);
  const double z = slice.z < 0.0 ? 0.5 * sc.grid->box_size : slice.z;
  write_plane_csv(fs::path(sc.output_dir) / "f_slice.csv", "f", rr.sol.Q, z,
                  [&](double x, double y) {
                    return sampler.eval_f({x, y, z}, slice.v);
                  });
  json j;
  j["v"] = {slice.v[0], slice.v[1], slice.v[2]};
  j["z"] = z;
  j["v_max"] = sampler.v_max();
  j["tail_estimate"] = sampler.tail_estimate();
  j["provenance"] = provenance_json(sc);
  write_json_file(fs::path(sc.output_dir) / "sample.json", j);
  return 0;
}

int cmd_density(const Scenario& sc, double z_in) {
  sc.require_grid();
  GBundle gb = build_gtransform(sc);
  const RunResult rr = run_solve(sc, gb);
  const PhaseSpaceSampler sampler(rr.sol);
  const double z = z_in < 0.0 ? 0.5 * sc.grid->box_size : z_in;
  write_plane_csv(fs::path(sc.output_dir) / "density_slice.csv", "rho", rr.sol.Q, z,
                  [&](double x, double y) { return sampler.density({x, y, z}); });
  return 0;
}

int cmd_compare(const Scenario& sc, double beta1, double beta2) {
  const ComparisonResult res = compare_full(beta1, beta2, sc);
  const ComparisonReport& rep = res.report;
  json j;
  j["theta"] = rep.theta;
  j["beta1"] = rep.beta1;
  j["beta2"] = rep.beta2;
  j["c_beta"] = rep.c_beta;
  j["sigma"] = rep.sigma;
  j["eps"] = rep.eps;
  j["neg_volume_fraction1"] = rep.neg_volume_fraction1;
  j["neg_volume_fraction2"] = rep.neg_volume_fraction2;
  j["q_diff_l2"] = rep.q_diff_l2;
  j["distinctness_scale"] = rep.distinctness_scale;
  j["f_diff_lower_bound"] = rep.f_diff_lower_bound;
  j["charge_neutrality_defect1"] = rep.charge_neutrality_defect1;
  j["charge_neutrality_defect2"] = rep.charge_neutrality_defect2;
  j["g_ordering_ok"] = rep.g_ordering_ok;
  j["degenerate"] = rep.degenerate;
  j["distinct"] = rep.distinct;
  j["iterations1"] = rep.iterations1;
  j["iterations2"] = rep.iterations2;
  j["provenance"] = provenance_json(sc);
  write_json_file(fs::path(sc.output_dir) / "comparison.json", j);

  ScalarField diff = res.run1.sol.Q;
  for (std::size_t i = 0; i < diff.size(); ++i) diff.values[i] -= res.run2.sol.Q.values[i];
  write_field(fs::path(sc.output_dir) / "qdiff.csv", diff);
  return 0;
}

namespace {

struct ParsedArgs {
  std::string scenario;
  std::string out;
  std::string c_beta;
  double beta = 0.0;
  double tol = 0.0;
  int max_iter = 0;
  double box = 0.0;
  int nodes = 0;
  double r_max = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
  SliceSpec slice;
  double z = -1.0;
};

void apply_overrides(Scenario& sc, const CLI::App& cmd, const ParsedArgs& a) {
  if (cmd.count("--out")) sc.output_dir = a.out;
  if (cmd.count("--beta")) {
    if (!(a.beta > 0.0) || !(a.beta < 0.5))
      throw std::invalid_argument("--beta must lie in (0, 1/2)");
    sc.profile.beta = a.beta;
  }
  if (cmd.count("--c-beta")) {
    if (a.c_beta == "auto") {
      sc.profile.c_beta.reset();
    } else {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(a.c_beta, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("--c-beta expects a number or 'auto'");
      }
      if (pos != a.c_beta.size() || !(v > 0.0))
        throw std::invalid_argument("--c-beta expects a positive number or 'auto'");
      sc.profile.c_beta = v;
    }
  }
  if (cmd.count("--tol")) {
    if (!(a.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    sc.solver.tol_fixed_point = a.tol;
  }
  if (cmd.count("--max-iter")) {
    if (a.max_iter < 1) throw std::invalid_argument("--max-iter must be >= 1");
    sc.solver.max_iter = a.max_iter;
  }
  const bool radial_cmd = cmd.get_name() == "radial";
  if (cmd.count("--box")) {
    if (!(a.box > 0.0)) throw std::invalid_argument("--box must be positive");
    if (!sc.grid) sc.grid = Scenario::Grid{};
    sc.grid->box_size = a.box;
  }
  if (cmd.count("--r-max")) {
    if (!(a.r_max > 0.0)) throw std::invalid_argument("--r-max must be positive");
    if (!sc.radial) sc.radial = Scenario::Radial{};
    sc.radial->r_max = a.r_max;
  }
  if (cmd.count("--nodes")) {
    if (a.nodes < 2) throw std::invalid_argument("--nodes must be >= 2");
    if (radial_cmd) {
      if (!sc.radial) sc.radial = Scenario::Radial{};
      sc.radial->n = a.nodes;
    } else {
      if (!sc.grid) sc.grid = Scenario::Grid{};
      sc.grid->n = a.nodes;
    }
  }
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"stationary solutions of the screened Vlasov-Poisson system"};
  app.require_subcommand(1);
  ParsedArgs a;

  auto add_common = [&a](CLI::App* cmd) {
    cmd->add_option("-s,--scenario", a.scenario, "scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", a.out, "output directory override");
    cmd->add_option("--beta", a.beta, "extension exponent override");
    cmd->add_option("--c-beta", a.c_beta, "extension amplitude override (number or 'auto')");
    cmd->add_option("--tol", a.tol, "fixed-point tolerance override");
    cmd->add_option("--max-iter", a.max_iter, "iteration cap override");
    cmd->add_option("-L,--box", a.box, "box size override");
    cmd->add_option("-n,--nodes", a.nodes, "mesh size override");
    cmd->add_option("--r-max", a.r_max, "radial domain override");
  };

  CLI::App* gcheck = app.add_subcommand("gcheck", "build the response table and check its conditions");
  add_common(gcheck);
  CLI::App* solve = app.add_subcommand("solve", "run the periodic-box fixed point");
  add_common(solve);
  CLI::App* radial = app.add_subcommand("radial", "run the spherically symmetric solver");
  add_common(radial);
  CLI::App* sample = app.add_subcommand("sample", "solve, then sample f on a z-plane");
  add_common(sample);
  sample->add_option("--vx", a.slice.v[0], "sample velocity x");
  sample->add_option("--vy", a.slice.v[1], "sample velocity y");
  sample->add_option("--vz", a.slice.v[2], "sample velocity z");
  sample->add_option("--z", a.slice.z, "plane height (default: mid-box)");
  CLI::App* density = app.add_subcommand("density", "solve, then write the spatial density on a z-plane");
  add_common(density);
  density->add_option("--z", a.z, "plane height (default: mid-box)");
  CLI::App* compare = app.add_subcommand("compare", "solve with two extensions and compare");
  add_common(compare);
  compare->add_option("--beta1", a.beta1, "first extension exponent")->required();
  compare->add_option("--beta2", a.beta2, "second extension exponent")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Scenario sc = Scenario::load_file(a.scenario);
    CLI::App* active = app.get_subcommands().front();
    apply_overrides(sc, *active, a);
    if (active == gcheck) return cmd_gcheck(sc);
    if (active == solve) return cmd_solve(sc);
    if (active == radial) return cmd_radial(sc);
    if (active == sample) return cmd_sample(sc, a.slice);
    if (active == density) return cmd_density(sc, a.z);
    if (active == compare) return cmd_compare(sc, a.beta1, a.beta2);
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vps::cli
