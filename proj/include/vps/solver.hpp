#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "vps/field.hpp"
#include "vps/gtransform.hpp"
#include "vps/sources.hpp"
#include "vps/spectral.hpp"

namespace vps {

struct SolverConfig {
  double tol_fixed_point = 1e-9;  // sup-norm of the update
  int max_iter = 500;
  double damping = 1.0;  // halved on residual growth, floor 0.125
  enum class CapPolicy { warn, error };
  CapPolicy cap_active_policy = CapPolicy::warn;
};

struct IterationRecord {
  int iter = 0;
  double update_norm = 0.0;
  double damping = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, std::vector<IterationRecord> hist)
      : std::runtime_error(msg), history(std::move(hist)) {}
  std::vector<IterationRecord> history;
};

struct Solution {
  ScalarField Q, R;
  std::shared_ptr<const SourceField> S;
  std::shared_ptr<const GTransform> g;
  int iterations = 0;
  double final_update_norm = 0.0;  // certificate sup|K(R) - R|
  double pde_residual = 0.0;       // set by assemble_and_verify
  bool cap_was_active = false;
  double comparison_slack = 0.0;  // max(R - H1), should stay below 1e-8
  double sigma = 0.0, theta = 0.0;
  std::vector<IterationRecord> history;
  double h1_removed_mean = 0.0, h1_gauge_offset = 0.0;
};

// One application of the fixed-point map: G = (sigma - Lap)^{-1} min(B[R+S], H).
ScalarField apply_K(const GTransform& g, const SourceField& s, const ScalarField& h,
                    const ScalarField& r, const SpectralBox& box);

// Damped Picard iteration from R = 0.  Throws ConvergenceError (with the
// residual history) if max_iter passes without meeting the tolerance.
Solution solve_fixed_point(const SolverConfig& cfg, std::shared_ptr<const GTransform> g,
                           std::shared_ptr<const SourceField> s, const AuxFields& aux,
                           const SpectralBox& box);

// Relative L2 residual of (sigma - Lap) R - min(B[R+S], H); the screened part
// of the background is carried analytically by S.  Stores the value in the
// solution and throws if it exceeds 100x the solver tolerance.
double assemble_and_verify(Solution& sol, const AuxFields& aux, const SpectralBox& box,
                           const SolverConfig& cfg);

}  // namespace vps
