#pragma once

#include <array>
#include <vector>

#include "vps/solver.hpp"

namespace vps {

// Phase-space density of a converged solution, evaluated on demand as the
// energy ansatz F(|v|^2/2 + Q(x)).  Never materialized on a 6D grid.
class PhaseSpaceSampler {
 public:
  explicit PhaseSpaceSampler(const Solution& sol);

  double q_at(const std::array<double, 3>& x) const;  // interpolated R + analytic S
  double eval_f(const std::array<double, 3>& x, const std::array<double, 3>& v) const;

  // Adaptive velocity integral, split at the profile's branch point when the
  // local potential is negative; cross-checked against the tabulated
  // response of Q(x).  Throws if the two quadratures disagree beyond 1e-8.
  double density(const std::array<double, 3>& x) const;

  struct VlasovResidual {
    double analytic_max = 0.0;  // chain-rule form; cancels exactly
    double fd_max = 0.0;        // centered differences, O(h^2 + dv^2)
  };
  // Transport residual v . grad_x f - grad_x Q . grad_v f at grid-node
  // samples, with the field gradient taken spectrally.  stride widens the
  // spatial difference to stride*h, so one converged field yields a
  // refinement study of the difference scheme.
  VlasovResidual vlasov_residual(const std::vector<std::array<int, 3>>& nodes,
                                 const std::array<double, 3>& v, const SpectralBox& box,
                                 double dv, int stride = 1) const;

  struct BoundaryDeviation {
    double l2 = 0.0;               // || f(.,v) - f0(v) ||_L2(box)
    double lipschitz_bound = 0.0;  // sup|F'| * ||Q||_L2(box)
  };
  BoundaryDeviation boundary_deviation(const std::array<double, 3>& v) const;

  double v_max() const { return v_max_; }
  double tail_estimate() const { return tail_estimate_; }  // certified neglected mass

 private:
  const Solution* sol_;
  const ExtensionProfile* f_;
  double v_core_ = 0.0;
  double v_max_ = 0.0;
  double tail_estimate_ = 0.0;
};

}  // namespace vps
