#include "vps/gtransform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "vps/quadrature.hpp"

namespace vps {

namespace {

constexpr double kPref = 17.771531752633464;  // 4 pi sqrt(2)

// decreasing bound for the base-branch remainders; infinite until the decay
// certificate of the boundary profile applies
struct TailBound {
  double y, cutoff, c, scale, power;
  double operator()(double t) const {
    if (t * t < std::max({cutoff - y, 2.0 * std::abs(y), 1.0}))
      return std::numeric_limits<double>::infinity();
    return scale * c / std::pow(t, power);
  }
};

}  // namespace

double g_value(const ExtensionProfile& f, double r) {
  const double c = f.base().decay_constant(), cutoff = f.base().tail_cutoff();
  auto integrand = [&f, r](double t) { return t * t * f(r + t * t); };
  TailBound tail{r, cutoff, c, 2.0 * kPref * 8.0 / 3.0, 3.0};
  if (r >= 0.0) return 2.0 * kPref * integrate_half_line(integrand, 0.0, tail).value;
  // profile switches branch at t = sqrt(-r); split there so each panel sees a
  // smooth integrand
  const double s = std::sqrt(-r);
  return 2.0 * kPref *
         (integrate(integrand, 0.0, s).value + integrate_half_line(integrand, s, tail).value);
}

double g_deriv(const ExtensionProfile& f, double y) {
  const double c = f.base().decay_constant(), cutoff = f.base().tail_cutoff();
  auto integrand = [&f, y](double t) { return f(y + t * t); };
  TailBound tail{y, cutoff, c, kPref * 8.0 / 5.0, 5.0};
  if (y >= 0.0) return -kPref * integrate_half_line(integrand, 0.0, tail).value;
  const double s = std::sqrt(-y);
  return -kPref *
         (integrate(integrand, 0.0, s).value + integrate_half_line(integrand, s, tail).value);
}

GTransform GTransform::build(const ExtensionProfile& f, double r_min, double r_max, int n) {
  if (!(r_min < 0.0) || !(r_max > 0.0)) throw std::invalid_argument("GTransform: need r_min < 0 < r_max");
  if (n < 64) throw std::invalid_argument("GTransform: need n >= 64");

  GTransform t(f);
  t.r_min_ = r_min;
  t.r_max_ = r_max;

  // geometric clustering around 0 on both sides, resolved to ~1e-5 at the
  // innermost node so the quadratic vanishing of the shifted response is seen
  // by the interpolant
  const double r_small = 1e-3;
  const double lneg = std::log1p(-r_min / r_small), lpos = std::log1p(r_max / r_small);
  const int n_neg = std::max(8, static_cast<int>(std::lround((n - 1) * lneg / (lneg + lpos))));
  const int n_pos = n - 1 - n_neg;
  if (n_pos < 8) throw std::invalid_argument("GTransform: range too lopsided for n");

  t.nodes_.reserve(n);
  for (int j = n_neg; j >= 1; --j) t.nodes_.push_back(-r_small * std::expm1(lneg * j / n_neg));
  t.nodes_.push_back(0.0);
  for (int j = 1; j <= n_pos; ++j) t.nodes_.push_back(r_small * std::expm1(lpos * j / n_pos));
  t.nodes_.front() = r_min;  // pin endpoints against roundoff
  t.nodes_.back() = r_max;

  t.vals_.resize(t.nodes_.size());
  t.derivs_.resize(t.nodes_.size());
  for (std::size_t j = 0; j < t.nodes_.size(); ++j) {
    t.vals_[j] = g_value(f, t.nodes_[j]);
    t.derivs_[j] = g_deriv(f, t.nodes_[j]);
  }
  t.sigma_ = -g_deriv(f, 0.0);
  t.alpha_ = 1.5 - f.beta();
  t.raw_g0_ = g_value(f, 0.0);

  // pin the normalization node: shift the whole table by the (quadrature
  // level) defect so the shifted response vanishes exactly at 0
  const double shift = 1.0 - t.vals_[static_cast<std::size_t>(n_neg)];
  for (double& v : t.vals_) v += shift;

  t.interp_ = Pchip::hermite(t.nodes_, t.vals_, t.derivs_);
  t.dinterp_ = Pchip::fit(t.nodes_, t.derivs_);

  // fit the envelope constants of the shifted response on nodes and midpoints
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, hi_both = 0.0;
  for (std::size_t j = 0; j + 1 < t.nodes_.size(); ++j) {
    for (double r : {t.nodes_[j], 0.5 * (t.nodes_[j] + t.nodes_[j + 1])}) {
      if (r == 0.0) continue;
      const double env = std::min(std::pow(std::abs(r), t.alpha_), r * r);
      const double ratio = t.b_raw(r) / env;
      hi_both = std::max(hi_both, ratio);
      if (r < 0.0) {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
  }
  t.c1_ = lo;
  t.c2_ = hi;
  t.c0_ = 1.1 * hi_both;
  return t;
}

double GTransform::g(double r) const {
  if (r < r_min_)
    throw std::out_of_range("GTransform::g: argument " + std::to_string(r) +
                            " below table range " + std::to_string(r_min_));
  if (r > r_max_) {
    ++clamp_count_;
    r = r_max_;
  }
  return interp_(r);
}

double GTransform::gprime(double r) const {
  r = std::clamp(r, r_min_, r_max_);
  return dinterp_(r);
}

double GTransform::b_raw(double p) const {
  if (p > r_max_) {
    ++clamp_count_;
    return interp_(r_max_) - 1.0 + sigma_ * p;
  }
  return g(p) - 1.0 + sigma_ * p;
}

double GTransform::b(double p) const {
  const double v = b_raw(p);
  if (v < -1e-12)
    throw std::runtime_error("GTransform::b: response dipped to " + std::to_string(v) +
                             " at p = " + std::to_string(p));
  return std::max(v, 0.0);
}

ConditionReport GTransform::verify() const {
  ConditionReport rep;
  rep.sigma = sigma_;
  rep.alpha = alpha_;
  rep.c0 = c0_;
  rep.c1 = c1_;
  rep.c2 = c2_;

  rep.normalization.worst_value = raw_g0_ - 1.0;
  rep.normalization.worst_location = 0.0;
  rep.normalization.pass = std::abs(rep.normalization.worst_value) <= 1e-9;

  rep.monotonicity.pass = sigma_ > 0.0;
  rep.monotonicity.worst_value = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (derivs_[j] > rep.monotonicity.worst_value) {
      rep.monotonicity.worst_value = derivs_[j];
      rep.monotonicity.worst_location = nodes_[j];
    }
    if (!(derivs_[j] < 0.0)) rep.monotonicity.pass = false;
    if (j > 0 && !(vals_[j] < vals_[j - 1])) rep.monotonicity.pass = false;
  }

  // tangent-line condition at 0, on nodes and midpoints of the negative side
  rep.subdifferential.pass = true;
  rep.subdifferential.worst_value = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < nodes_.size() && nodes_[j] < 0.0; ++j) {
    for (double y : {nodes_[j], 0.5 * (nodes_[j] + nodes_[j + 1])}) {
      if (y >= 0.0) continue;
      const double margin = interp_(y) - (1.0 - sigma_ * y);
      if (margin < rep.subdifferential.worst_value) {
        rep.subdifferential.worst_value = margin;
        rep.subdifferential.worst_location = y;
      }
      if (margin < -1e-10 * (1.0 + std::abs(sigma_ * y))) rep.subdifferential.pass = false;
    }
  }

  rep.growth.pass = c1_ > 0.0 && std::isfinite(c2_) && c2_ >= c1_;
  rep.growth.worst_location = r_min_;
  rep.growth.worst_value = c1_;
  return rep;
}

void GTransform::write_csv(std::ostream& os) const {
  os << "r,g,gprime\n";
  char buf[96];
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", nodes_[j], vals_[j], derivs_[j]);
    os << buf;
  }
}

ScalarField b_apply(const GTransform& g, const ScalarField& p) {
  ScalarField out = p;
  for (double& v : out.values) v = g.b(v);
  return out;
}

}  // namespace vps
