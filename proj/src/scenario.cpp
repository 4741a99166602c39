#include "vps/scenario.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace vps {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ScenarioError(std::string("scenario: missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ScenarioError(std::string("scenario: missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

Scenario Scenario::from_json(const nlohmann::json& j) {
  Scenario sc;
  if (!j.is_object()) throw ScenarioError("scenario: top level must be an object");

  if (j.contains("profile")) {
    const auto& p = j["profile"];
    sc.profile.name = p.value("name", std::string("maxwellian"));
    sc.profile.beta = require_number(p, "beta");
    if (p.contains("c_beta")) {
      if (p["c_beta"].is_string()) {
        if (p["c_beta"].get<std::string>() != "auto")
          throw ScenarioError("scenario: profile.c_beta must be a number or \"auto\"");
      } else if (p["c_beta"].is_number()) {
        sc.profile.c_beta = p["c_beta"].get<double>();
      } else {
        throw ScenarioError("scenario: profile.c_beta must be a number or \"auto\"");
      }
    }
    sc.profile.r_probe = p.value("r_probe", -50.0);
    sc.profile.margin = p.value("margin", 0.1);
  } else {
    throw ScenarioError("scenario: 'profile' section is required");
  }
  if (sc.profile.name != "maxwellian")
    throw ScenarioError("scenario: unknown profile '" + sc.profile.name + "'");
  if (!(sc.profile.beta > 0.0) || !(sc.profile.beta < 0.5))
    throw ScenarioError("scenario: profile.beta must lie in (0, 1/2)");
  if (sc.profile.c_beta && !(*sc.profile.c_beta > 0.0))
    throw ScenarioError("scenario: profile.c_beta must be positive");

  if (j.contains("gtable")) {
    const auto& t = j["gtable"];
    sc.gtable.r_min = t.value("r_min", -50.0);
    sc.gtable.r_max = t.value("r_max", 50.0);
    sc.gtable.n = t.value("n", 1201);
  }
  if (!(sc.gtable.r_min < 0.0) || !(sc.gtable.r_max > 0.0) || sc.gtable.n < 64)
    throw ScenarioError("scenario: gtable needs r_min < 0 < r_max and n >= 64");

  if (j.contains("charges")) {
    const auto& c = j["charges"];
    if (c.contains("points")) {
      if (!c["points"].is_array()) throw ScenarioError("scenario: charges.points must be an array");
      for (const auto& pt : c["points"]) {
        PointCharge pc;
        if (!pt.contains("pos") || !pt["pos"].is_array() || pt["pos"].size() != 3)
          throw ScenarioError("scenario: each point charge needs pos = [x,y,z]");
        for (int d = 0; d < 3; ++d) pc.pos[d] = pt["pos"][d].get<double>();
        pc.q = require_number(pt, "q");
        sc.points.push_back(pc);
      }
    }
    sc.density_file = c.value("density_file", std::string());
  }

  if (j.contains("grid")) {
    Grid g;
    g.box_size = require_number(j["grid"], "L");
    g.n = require_int(j["grid"], "n");
    if (!(g.box_size > 0.0) || g.n < 2) throw ScenarioError("scenario: grid needs L > 0, n >= 2");
    sc.grid = g;
  }
  if (j.contains("radial")) {
    Radial r;
    r.r_max = require_number(j["radial"], "r_max");
    r.n = require_int(j["radial"], "n");
    if (!(r.r_max > 0.0) || r.n < 4)
      throw ScenarioError("scenario: radial needs r_max > 0, n >= 4");
    sc.radial = r;
  }

  if (j.contains("solver")) {
    const auto& s = j["solver"];
    sc.solver.tol_fixed_point = s.value("tol", 1e-9);
    sc.solver.max_iter = s.value("max_iter", 500);
    sc.solver.damping = s.value("damping", 1.0);
    const std::string pol = s.value("cap_policy", std::string("warn"));
    if (pol == "warn")
      sc.solver.cap_active_policy = SolverConfig::CapPolicy::warn;
    else if (pol == "error")
      sc.solver.cap_active_policy = SolverConfig::CapPolicy::error;
    else
      throw ScenarioError("scenario: solver.cap_policy must be 'warn' or 'error'");
  }
  if (!(sc.solver.tol_fixed_point > 0.0) || sc.solver.max_iter < 1 ||
      !(sc.solver.damping > 0.0) || sc.solver.damping > 1.0)
    throw ScenarioError("scenario: solver needs tol > 0, max_iter >= 1, damping in (0,1]");

  sc.output_dir = j.value("output_dir", std::string("out"));
  return sc;
}

Scenario Scenario::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ScenarioError("scenario: JSON parse failure in '" + path + "': " + e.what());
  }
  return from_json(j);
}

nlohmann::json Scenario::to_json() const {
  json j;
  j["profile"]["name"] = profile.name;
  j["profile"]["beta"] = profile.beta;
  if (profile.c_beta)
    j["profile"]["c_beta"] = *profile.c_beta;
  else
    j["profile"]["c_beta"] = "auto";
  j["profile"]["r_probe"] = profile.r_probe;
  j["profile"]["margin"] = profile.margin;
  j["gtable"] = {{"r_min", gtable.r_min}, {"r_max", gtable.r_max}, {"n", gtable.n}};
  j["charges"]["points"] = json::array();
  for (const auto& p : points)
    j["charges"]["points"].push_back({{"pos", {p.pos[0], p.pos[1], p.pos[2]}}, {"q", p.q}});
  if (!density_file.empty()) j["charges"]["density_file"] = density_file;
  if (grid) j["grid"] = {{"L", grid->box_size}, {"n", grid->n}};
  if (radial) j["radial"] = {{"r_max", radial->r_max}, {"n", radial->n}};
  j["solver"] = {{"tol", solver.tol_fixed_point},
                 {"max_iter", solver.max_iter},
                 {"damping", solver.damping},
                 {"cap_policy",
                  solver.cap_active_policy == SolverConfig::CapPolicy::warn ? "warn" : "error"}};
  j["output_dir"] = output_dir;
  return j;
}

double Scenario::point_charge_total() const {
  double t = 0.0;
  for (const auto& p : points) t += p.q;
  return t;
}

void Scenario::require_grid() const {
  if (!grid) throw ScenarioError("scenario: this command needs a 'grid' section");
}

void Scenario::require_radial() const {
  if (!radial) throw ScenarioError("scenario: this command needs a 'radial' section");
  if (points.size() != 1 || !density_file.empty())
    throw ScenarioError("scenario: radial runs take exactly one point charge and no smooth part");
  const auto& p = points[0];
  if (p.pos[0] != 0.0 || p.pos[1] != 0.0 || p.pos[2] != 0.0)
    throw ScenarioError("scenario: the radial charge must sit at the origin");
  if (p.q == 0.0) throw ScenarioError("scenario: radial charge must be nonzero");
}

}  // namespace vps
