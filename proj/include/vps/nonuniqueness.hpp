#pragma once

#include "vps/profile.hpp"
#include "vps/radial.hpp"
#include "vps/runner.hpp"
#include "vps/scenario.hpp"
#include "vps/solver.hpp"

namespace vps {

// Volume fraction of {Q < -eps}.  With an attractive total charge this must
// be strictly positive for any converged solution; with a repulsive one it
// vanishes.
double negative_set(const Solution& sol, double eps);
double negative_set(const RadialSolution& sol, double eps);

// |integral of (g(Q) - 1) + theta|.  The screened background potential is
// integrated analytically (its grid sum would be polluted by the Coulomb
// singularities); the induced response is summed on the grid.  Small for any
// converged solution: the plasma exactly cancels the background charge.
double charge_neutrality(const Solution& sol);
double charge_neutrality(const RadialSolution& sol, const GTransform& g);

// L1(dv) distance between the two phase-space densities at potential value q,
// minimized over a rigid energy shift of the second profile:
//   inf_r 4 pi int_0^inf w^2 |F1(w^2/2 + q) - F2(w^2/2 + r)| dw.
// Positive whenever the extensions differ on the energies below q < 0.
struct InnerInfimum {
  double r = 0.0;      // minimizing shift
  double value = 0.0;  // distance at the minimum
};
double profile_pair_distance(const ExtensionProfile& f1, const ExtensionProfile& f2, double q,
                             double r);
InnerInfimum inner_infimum(const ExtensionProfile& f1, const ExtensionProfile& f2, double q);

// Integral over the negative set A = {Q1 < -eps} of the inner infimum: a
// lower bound for the L1 phase-space distance of the two solutions that
// cannot be closed by relabeling potential values.  The infimum is tabulated
// over the range of Q1 on A and interpolated monotonically.
double f_difference_lower_bound(const Solution& a, const Solution& b, double eps);

struct ComparisonReport {
  double theta = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
  double c_beta = 0.0;  // shared extension amplitude
  double sigma = 0.0;
  double eps = 0.0;  // negativity threshold (10x solver tolerance)
  double neg_volume_fraction1 = 0.0, neg_volume_fraction2 = 0.0;
  double q_diff_l2 = 0.0;
  double distinctness_scale = 0.0;  // 10 (tol1 + tol2) sqrt(volume)
  double f_diff_lower_bound = 0.0;
  double charge_neutrality_defect1 = 0.0, charge_neutrality_defect2 = 0.0;
  bool g_ordering_ok = false;  // g_{beta1} > g_{beta2} on table nodes r <= -0.05
  bool degenerate = false;     // beta1 == beta2 (identity check, not a witness)
  bool distinct = false;
  int iterations1 = 0, iterations2 = 0;
};

// Runs the full pipeline twice with a shared amplitude c = max of the two
// calibrations and compares the solutions.  Requires theta < 0 and
// 0 < beta1 <= beta2 < 1/2.  Throws if the solves converge but the
// distinctness assertions fail, or if the negative set is empty (the grid
// cannot resolve the attractive well).
ComparisonReport compare(double beta1, double beta2, const Scenario& sc);

// The two solutions behind the last report; exposed so callers can write
// difference fields without re-solving.
struct ComparisonResult {
  ComparisonReport report;
  RunResult run1, run2;
  GBundle gb1, gb2;
};
ComparisonResult compare_full(double beta1, double beta2, const Scenario& sc);

}  // namespace vps
