#pragma once

#include <array>
#include <string>

#include "vps/scenario.hpp"

namespace vps::cli {

// Subcommand bodies.  They write their report files under sc.output_dir and
// return a process exit code; anything exceptional propagates and dispatch()
// translates it (0 success, 1 assertion/condition failure, 2 bad parameters,
// 3 non-convergence).
int cmd_gcheck(const Scenario& sc);
int cmd_solve(const Scenario& sc);
int cmd_radial(const Scenario& sc);

struct SliceSpec {
  std::array<double, 3> v{0.0, 0.0, 0.0};
  double z = -1.0;  // negative: use the mid-plane
};
int cmd_sample(const Scenario& sc, const SliceSpec& slice);
int cmd_density(const Scenario& sc, double z);

int cmd_compare(const Scenario& sc, double beta1, double beta2);

// Full command-line entry point (argument parsing + error-to-exit-code map).
int dispatch(int argc, const char* const* argv);

}  // namespace vps::cli
