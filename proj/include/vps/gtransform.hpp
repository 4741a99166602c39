#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vps/field.hpp"
#include "vps/pchip.hpp"
#include "vps/profile.hpp"

namespace vps {

// Density response induced by a profile: g(r) = 4 pi sqrt(2) int_0^inf sqrt(s) F(r+s) ds,
// evaluated as 8 pi sqrt(2) int_0^inf t^2 F(r+t^2) dt.  Adaptive quadrature with a
// certified tail bound from the profile's decay constant.
double g_value(const ExtensionProfile& f, double r);
// g'(y) = -4 pi sqrt(2) int_0^inf F(y+t^2) dt.
double g_deriv(const ExtensionProfile& f, double y);

struct ConditionReport {
  struct Check {
    bool pass = false;
    double worst_location = 0.0;
    double worst_value = 0.0;
  };
  Check normalization;     // raw g(0) against 1
  Check monotonicity;      // g' < 0 at the table nodes
  Check subdifferential;   // g(y) >= g(0) - sigma y on y < 0
  Check growth;            // two-sided power/quadratic envelope on the shifted response
  double sigma = 0.0;      // -g'(0) > 0
  double alpha = 0.0;      // 3/2 - beta
  double c1 = 0.0, c2 = 0.0;  // envelope constants fitted on y < 0
  double c0 = 0.0;            // global upper envelope constant (with safety factor)
  bool all_pass() const {
    return normalization.pass && monotonicity.pass && subdifferential.pass && growth.pass;
  }
};

// Tabulated response on [r_min, r_max]: geometrically clustered nodes around 0,
// monotone cubic interpolation, values shifted by 1 - g(0) so the table is
// exactly normalized at the origin.
class GTransform {
 public:
  static GTransform build(const ExtensionProfile& f, double r_min = -50.0, double r_max = 50.0,
                          int n = 1201);

  double g(double r) const;        // clamps (and counts) r > r_max; throws below r_min
  double gprime(double r) const;   // interpolated derivative table, diagnostics only
  // Shifted response B(p) = g(p) - 1 + sigma p, clamped to [0, inf).
  // Values below -1e-12 before clamping indicate a corrupted table and throw.
  double b(double p) const;

  double sigma() const { return sigma_; }
  double alpha() const { return alpha_; }
  double c0() const { return c0_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double raw_g0() const { return raw_g0_; }
  const ExtensionProfile& profile() const { return profile_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& node_values() const { return vals_; }
  const std::vector<double>& node_derivs() const { return derivs_; }
  std::uint64_t clamp_count() const { return clamp_count_; }

  ConditionReport verify() const;
  void write_csv(std::ostream& os) const;  // columns r,g,gprime

 private:
  GTransform(ExtensionProfile f) : profile_(std::move(f)) {}
  double b_raw(double p) const;  // unclamped shifted response

  ExtensionProfile profile_;
  double r_min_ = 0.0, r_max_ = 0.0;
  double sigma_ = 0.0, alpha_ = 0.0;
  double raw_g0_ = 0.0;
  double c0_ = 0.0, c1_ = 0.0, c2_ = 0.0;
  std::vector<double> nodes_, vals_, derivs_;
  Pchip interp_, dinterp_;
  // single logical thread everywhere; plain counter keeps the class movable
  mutable std::uint64_t clamp_count_ = 0;
};

// Pointwise shifted response of a whole field.
ScalarField b_apply(const GTransform& g, const ScalarField& p);

}  // namespace vps
