#pragma once

#include <functional>

namespace vps {

// Microscopic equilibrium profile on the energy half-line [0, inf):
// the ansatz data F0 together with the constants of its decay certificate
//   (|F0| + |F0'|)(r) <= C / (1 + r^3).
// Derivatives are supplied analytically by the constructor.
class BoundaryProfile {
 public:
  using Fn = std::function<double(double)>;

  BoundaryProfile(Fn f, Fn df, double decay_constant, double tail_cutoff);

  double operator()(double r) const { return f_(r); }
  double deriv(double r) const { return df_(r); }
  double decay_constant() const { return decay_constant_; }
  double tail_cutoff() const { return tail_cutoff_; }

 private:
  Fn f_, df_;
  double decay_constant_, tail_cutoff_;
};

// Normalized Maxwellian (2 pi)^{-3/2} exp(-r).
BoundaryProfile make_maxwellian();

struct ValidationReport {
  bool normalization_ok = false;
  bool positivity_ok = false;
  bool monotone_ok = false;
  bool decay_ok = false;
  double normalization = 0.0;           // induced density response at 0, should be 1
  double fitted_decay_constant = 0.0;   // max over samples of (|F|+|F'|)(1+r^3)
  bool pass() const { return normalization_ok && positivity_ok && monotone_ok && decay_ok; }
};

ValidationReport validate_profile(const BoundaryProfile& p, double tol = 1e-9);

// Two-parameter extension of a boundary profile to negative energies:
//   F(r) = c_beta r^2 / <r>^(beta+2) + exp(-r^2) (F0(0) + F0'(0) r),  r < 0,
// with <r> = sqrt(1 + r^2).  C^1 across r = 0 by construction.
class ExtensionProfile {
 public:
  ExtensionProfile(BoundaryProfile base, double beta, double c_beta);

  double operator()(double r) const;
  double deriv(double r) const;

  double beta() const { return beta_; }
  double c_beta() const { return c_; }
  const BoundaryProfile& base() const { return base_; }
  double sup_abs_deriv() const { return sup_abs_deriv_; }  // sampled Lipschitz bound

 private:
  BoundaryProfile base_;
  double beta_, c_;
  double a0_, b0_;  // F0(0), F0'(0)
  double sup_abs_deriv_;
};

// Smallest bump amplitude (times 1 + margin) for which the induced density
// response stays above its tangent line at 0 on a dense sample of
// [r_probe, 0].  Found by bisection; the bracket is certified first.
double calibrate_c_beta(const BoundaryProfile& base, double beta, double r_probe = -50.0,
                        double margin = 0.1);

}  // namespace vps
