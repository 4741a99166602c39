#pragma once

#include <memory>
#include <optional>

#include "vps/gtransform.hpp"
#include "vps/radial.hpp"
#include "vps/scenario.hpp"
#include "vps/solver.hpp"

namespace vps {

// Profile + tabulated response, assembled from a scenario (optionally
// overriding the extension parameters, which the comparison driver uses to
// share a calibrated amplitude across two betas).
struct GBundle {
  std::shared_ptr<const GTransform> g;
  double c_beta = 0.0;
  ValidationReport profile_report;
  ConditionReport conditions;
};

GBundle build_gtransform(const Scenario& sc, std::optional<double> beta_override = {},
                         std::optional<double> c_beta_override = {});

struct RunResult {
  Solution sol;
  AuxFields aux;
  std::shared_ptr<const SpectralBox> box;
  double neutrality_defect = 0.0;
};

// Full 3D pipeline: charges -> S -> majorants -> fixed point -> verification.
RunResult run_solve(const Scenario& sc, const GBundle& gb);
// Shares an already-planned box (the comparison driver reuses one).
RunResult run_solve(const Scenario& sc, const GBundle& gb,
                    std::shared_ptr<const SpectralBox> box);

RadialSolution run_radial(const Scenario& sc, const GBundle& gb);

// Assembles the background measure for the scenario grid.
ChargeMeasure load_charges(const Scenario& sc);

}  // namespace vps
