#pragma once

#include <vector>

#include "vps/field.hpp"
#include "vps/gtransform.hpp"
#include "vps/solver.hpp"

namespace vps {

// Spherically symmetric reduction for a single point charge theta at the
// origin.  Everything lives on the uniform interior mesh r_i = i h.
struct RadialSolution {
  RadialField Q, R, S, H1, H;
  int iterations = 0;
  double final_update_norm = 0.0;
  double pde_residual = 0.0;
  bool cap_was_active = false;
  double comparison_slack = 0.0;
  double sigma = 0.0, theta = 0.0;
  std::vector<IterationRecord> history;
};

// Damped Picard on the radial operator (sigma - d^2/dr^2 - (2/r) d/dr) with
// regularity at 0 and a Dirichlet zero at r_max, discretized through u = r R
// (tridiagonal, second order).  The majorant pair is built from Newton-shell
// integrals of the shifted response of S.
RadialSolution radial_solve(const SolverConfig& cfg, const GTransform& g, double theta,
                            double r_max, int n);

}  // namespace vps
