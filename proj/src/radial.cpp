#include "vps/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vps/sources.hpp"

namespace vps {

namespace {

// (sigma - d^2/dr^2) on u = r R with u(0) = u(r_max) = 0: Thomas solve.
// The matrix is an M-matrix, so a nonnegative right side yields a
// nonnegative u without any clamping.
RadialField solve_radial_helmholtz(double sigma, const RadialField& w) {
  const int m = w.interior();
  const double h = w.h();
  const double diag = sigma * h * h + 2.0;
  std::vector<double> cp(m), dp(m);
  double denom = diag;
  cp[0] = -1.0 / denom;
  dp[0] = h * h * w.r(0) * w.values[0] / denom;
  for (int i = 1; i < m; ++i) {
    denom = diag + cp[i - 1];
    cp[i] = -1.0 / denom;
    dp[i] = (h * h * w.r(i) * w.values[i] + dp[i - 1]) / denom;
  }
  RadialField out = RadialField::zeros(w.r_max, w.n);
  double u = dp[m - 1];
  out.values[m - 1] = u / out.r(m - 1);
  for (int i = m - 2; i >= 0; --i) {
    u = dp[i] - cp[i] * u;
    out.values[i] = u / out.r(i);
  }
  return out;
}

RadialField apply_k_radial(const GTransform& g, const RadialField& s, const RadialField& h,
                           const RadialField& r) {
  RadialField w = RadialField::zeros(s.r_max, s.n);
  for (int i = 0; i < w.interior(); ++i)
    w.values[i] = std::min(g.b(r.values[i] + s.values[i]), h.values[i]);
  return solve_radial_helmholtz(g.sigma(), w);
}

}  // namespace

RadialSolution radial_solve(const SolverConfig& cfg, const GTransform& g, double theta,
                            double r_max, int n) {
  if (theta == 0.0) throw std::invalid_argument("radial_solve: theta must be nonzero");
  if (!(cfg.tol_fixed_point > 0.0)) throw std::invalid_argument("radial_solve: tol must be positive");
  const double sigma = g.sigma();
  const double a = std::sqrt(sigma);
  if (r_max * a < 20.0 - 1e-9)
    throw std::invalid_argument("radial_solve: mesh must span at least 20 screening lengths");
  if ((r_max / n) * a > 0.2 + 1e-9)
    throw std::invalid_argument("radial_solve: mesh must resolve 0.2 screening lengths per cell");

  RadialSolution sol;
  sol.sigma = sigma;
  sol.theta = theta;
  sol.S = RadialField::zeros(r_max, n);
  const int m = sol.S.interior();
  const double h = sol.S.h();
  for (int i = 0; i < m; ++i) sol.S.values[i] = theta * yukawa(sigma, sol.S.r(i));

  // majorant pair from the response of S alone, via Newton-shell integrals
  RadialField w0 = RadialField::zeros(r_max, n);
  for (int i = 0; i < m; ++i) w0.values[i] = g.b(sol.S.values[i]);
  std::vector<double> inner(m), outer(m);
  inner[0] = w0.values[0] * h * h * h / 3.0;  // leading estimate on the first cell
  for (int i = 1; i < m; ++i) {
    const double r0 = w0.r(i - 1), r1 = w0.r(i);
    inner[i] = inner[i - 1] +
               0.5 * (w0.values[i - 1] * r0 * r0 + w0.values[i] * r1 * r1) * h;
  }
  outer[m - 1] = 0.5 * w0.values[m - 1] * w0.r(m - 1) * h;  // tapers to zero at r_max
  for (int i = m - 2; i >= 0; --i)
    outer[i] = outer[i + 1] + 0.5 * (w0.values[i] * w0.r(i) + w0.values[i + 1] * w0.r(i + 1)) * h;

  sol.H1 = RadialField::zeros(r_max, n);
  sol.H = RadialField::zeros(r_max, n);
  const double c0 = g.c0(), alpha = g.alpha();
  for (int i = 0; i < m; ++i) {
    sol.H1.values[i] = inner[i] / sol.H1.r(i) + outer[i];
    const double v = std::abs(sol.S.values[i]) + std::abs(sol.H1.values[i]);
    sol.H.values[i] = c0 * std::min(std::pow(v, alpha), v * v);
  }

  RadialField r = RadialField::zeros(r_max, n);
  RadialField pre_polish = r;
  double omega = cfg.damping;
  double prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    RadialField k = apply_k_radial(g, sol.S, sol.H, r);
    double diff = 0.0;
    for (int i = 0; i < m; ++i) diff = std::max(diff, std::abs(k.values[i] - r.values[i]));
    sol.history.push_back({it, diff, omega});
    sol.iterations = it;
    if (diff <= cfg.tol_fixed_point) {
      pre_polish = std::move(r);
      r = std::move(k);
      converged = true;
      break;
    }
    if (diff > prev) omega = std::max(0.5 * omega, 0.125);
    for (int i = 0; i < m; ++i) r.values[i] = (1.0 - omega) * r.values[i] + omega * k.values[i];
    prev = diff;
  }
  if (!converged)
    throw ConvergenceError("radial_solve: no convergence in " + std::to_string(cfg.max_iter) +
                               " iterations (damping " + std::to_string(omega) + ")",
                           sol.history);

  {
    RadialField k2 = apply_k_radial(g, sol.S, sol.H, r);
    double cert = 0.0;
    for (int i = 0; i < m; ++i) cert = std::max(cert, std::abs(k2.values[i] - r.values[i]));
    if (cert <= cfg.tol_fixed_point) {
      sol.history.push_back({sol.iterations + 1, cert, omega});
    } else {
      r = std::move(pre_polish);
      cert = sol.history.back().update_norm;
    }
    sol.final_update_norm = cert;
  }

  sol.cap_was_active = false;
  sol.comparison_slack = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const double b = g.b(r.values[i] + sol.S.values[i]);
    if (b > sol.H.values[i] * (1.0 + 1e-12) + 1e-12) sol.cap_was_active = true;
    sol.comparison_slack = std::max(sol.comparison_slack, r.values[i] - sol.H1.values[i]);
  }
  if (sol.cap_was_active && cfg.cap_active_policy == SolverConfig::CapPolicy::error)
    throw std::runtime_error("radial_solve: envelope cap active at convergence");

  sol.R = r;
  sol.Q = r;
  for (int i = 0; i < m; ++i) sol.Q.values[i] += sol.S.values[i];

  // residual of the discrete operator on the accepted iterate
  double num = 0.0, den = 0.0, wsum = 0.0, lmax = 0.0;
  for (int i = 0; i < m; ++i) {
    const double ri = sol.R.r(i);
    const double u = ri * sol.R.values[i];
    const double um = (i > 0) ? sol.R.r(i - 1) * sol.R.values[i - 1] : 0.0;
    const double up = (i + 1 < m) ? sol.R.r(i + 1) * sol.R.values[i + 1] : 0.0;
    const double q = sol.R.values[i] + sol.S.values[i];
    const double w = std::min(g.b(q), sol.H.values[i]);
    const double lhs = (sigma * u - (up - 2.0 * u + um) / (h * h)) / ri;
    const double wgt = ri * ri;
    num += wgt * (lhs - w) * (lhs - w);
    den += wgt * w * w;
    wsum += wgt;
    lmax = std::max(lmax, std::abs(g.gprime(q) + sigma));
  }
  sol.pde_residual = std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
  // the accepted iterate solves the linear system for the previous sweep's
  // source, so the residual can lag by sup|b'| times the certificate even in
  // a correct solve (dominant when the source is quadratically small); flag
  // only residuals that neither the data scale nor that lag explains
  const double lag = lmax * std::max(sol.final_update_norm, cfg.tol_fixed_point) * std::sqrt(wsum);
  if (sol.pde_residual > 100.0 * cfg.tol_fixed_point && std::sqrt(num) > 100.0 * lag)
    throw std::runtime_error("radial_solve: relative residual " +
                             std::to_string(sol.pde_residual) + " flags an inconsistent solve");
  return sol;
}

}  // namespace vps
