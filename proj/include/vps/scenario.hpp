#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vps/solver.hpp"
#include "vps/sources.hpp"

namespace vps {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully deterministic run description; everything a command needs is either
// here or derived from it.
struct Scenario {
  struct Profile {
    std::string name = "maxwellian";
    double beta = 0.25;
    std::optional<double> c_beta;  // absent: calibrate automatically
    double r_probe = -50.0;
    double margin = 0.1;
  };
  struct GTable {
    double r_min = -50.0, r_max = 50.0;
    int n = 1201;
  };
  struct Grid {
    double box_size = 0.0;
    int n = 0;
  };
  struct Radial {
    double r_max = 0.0;
    int n = 0;
  };

  Profile profile;
  GTable gtable;
  std::vector<PointCharge> points;
  std::string density_file;  // optional smooth part, CSV field matching the grid
  std::optional<Grid> grid;
  std::optional<Radial> radial;
  SolverConfig solver;
  std::string output_dir = "out";

  static Scenario from_json(const nlohmann::json& j);
  static Scenario load_file(const std::string& path);
  nlohmann::json to_json() const;  // normalized echo, used as provenance

  double point_charge_total() const;
  void require_grid() const;    // throws ScenarioError when absent/invalid
  void require_radial() const;  // ditto; also pins the single origin charge
};

}  // namespace vps
