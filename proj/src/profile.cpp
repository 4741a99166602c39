#include "vps/profile.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "vps/quadrature.hpp"

namespace vps {

namespace {

constexpr double kTwoPiPow32 = 15.749609945722419;  // (2 pi)^{3/2}
constexpr double kPref = 17.771531752633464;        // 4 pi sqrt(2)

double huge() { return std::numeric_limits<double>::infinity(); }

}  // namespace

BoundaryProfile::BoundaryProfile(Fn f, Fn df, double decay_constant, double tail_cutoff)
    : f_(std::move(f)), df_(std::move(df)), decay_constant_(decay_constant),
      tail_cutoff_(tail_cutoff) {
  if (!f_ || !df_) throw std::invalid_argument("BoundaryProfile: null callable");
  if (!(decay_constant_ > 0.0) || !(tail_cutoff_ > 0.0))
    throw std::invalid_argument("BoundaryProfile: decay data must be positive");
}

BoundaryProfile make_maxwellian() {
  const double a = 1.0 / kTwoPiPow32;
  // decay certificate: (|F|+|F'|)(1+r^3) = 2a e^{-r}(1+r^3), maximal near r = 2.88
  const double rstar = golden_min([](double r) { return -std::exp(-r) * (1.0 + r * r * r); },
                                  1.0, 5.0, 1e-12);
  const double c = 2.0 * a * std::exp(-rstar) * (1.0 + rstar * rstar * rstar);
  return BoundaryProfile([a](double r) { return a * std::exp(-r); },
                         [a](double r) { return -a * std::exp(-r); }, c * (1.0 + 1e-12), 40.0);
}

ValidationReport validate_profile(const BoundaryProfile& p, double tol) {
  ValidationReport rep;
  const double cutoff = p.tail_cutoff();
  const double c_stored = p.decay_constant();

  rep.positivity_ok = true;
  rep.monotone_ok = true;
  rep.fitted_decay_constant = 0.0;
  const int m = 4000;
  for (int j = 0; j <= m; ++j) {
    const double r = cutoff * j / m;
    const double f = p(r), df = p.deriv(r);
    if (!(f >= 0.0)) rep.positivity_ok = false;
    if (df > 1e-12 * (1.0 + std::abs(f))) rep.monotone_ok = false;
    rep.fitted_decay_constant =
        std::max(rep.fitted_decay_constant, (std::abs(f) + std::abs(df)) * (1.0 + r * r * r));
  }
  rep.decay_ok = rep.fitted_decay_constant <= c_stored * (1.0 + 1e-9);

  // normalization of the induced density response at 0 (velocity integral of F)
  auto integrand = [&p](double t) { return t * t * p(t * t); };
  auto tail = [&](double t) {
    if (t * t < std::max(cutoff, 1.0)) return huge();
    return 2.0 * kPref * 8.0 * c_stored / (3.0 * t * t * t);
  };
  QuadResult q = integrate_half_line(integrand, 0.0, tail);
  rep.normalization = 2.0 * kPref * q.value;
  rep.normalization_ok = std::abs(rep.normalization - 1.0) <= tol;
  return rep;
}

ExtensionProfile::ExtensionProfile(BoundaryProfile base, double beta, double c_beta)
    : base_(std::move(base)), beta_(beta), c_(c_beta) {
  if (!(beta > 0.0) || !(beta < 0.5))
    throw std::invalid_argument("ExtensionProfile: beta must lie in (0, 1/2)");
  if (!(c_beta > 0.0)) throw std::invalid_argument("ExtensionProfile: c_beta must be positive");
  a0_ = base_(0.0);
  b0_ = base_.deriv(0.0);
  sup_abs_deriv_ = 0.0;
  const int m = 65536;
  for (int j = 0; j <= m; ++j) {
    const double r = -80.0 + 160.0 * j / m;
    sup_abs_deriv_ = std::max(sup_abs_deriv_, std::abs(deriv(r)));
  }
}

double ExtensionProfile::operator()(double r) const {
  if (r >= 0.0) return base_(r);
  const double br2 = 1.0 + r * r;
  return c_ * r * r * std::pow(br2, -0.5 * (beta_ + 2.0)) +
         std::exp(-r * r) * (a0_ + b0_ * r);
}

double ExtensionProfile::deriv(double r) const {
  if (r >= 0.0) return base_.deriv(r);
  const double br2 = 1.0 + r * r;
  return c_ * r * (2.0 - beta_ * r * r) * std::pow(br2, -0.5 * (beta_ + 4.0)) +
         std::exp(-r * r) * (b0_ - 2.0 * r * (a0_ + b0_ * r));
}

double calibrate_c_beta(const BoundaryProfile& base, double beta, double r_probe, double margin) {
  if (!(beta > 0.0) || !(beta < 0.5))
    throw std::invalid_argument("calibrate_c_beta: beta must lie in (0, 1/2)");
  if (!(r_probe < 0.0)) throw std::invalid_argument("calibrate_c_beta: r_probe must be negative");
  if (!(margin >= 0.0)) throw std::invalid_argument("calibrate_c_beta: margin must be >= 0");

  const double a0 = base(0.0), b0 = base.deriv(0.0);
  const double cutoff = base.tail_cutoff(), cdecay = base.decay_constant();

  auto base_tail = [&](double y) {
    return [y, cutoff, cdecay](double t) {
      if (t * t < std::max({cutoff - y, 2.0 * std::abs(y), 1.0})) return huge();
      return 2.0 * kPref * 8.0 * cdecay / (3.0 * t * t * t);
    };
  };

  // tangent data at 0, from the boundary profile alone
  auto sig_tail = [&](double t) {
    if (t * t < std::max(cutoff, 1.0)) return huge();
    return kPref * cdecay / (5.0 * t * t * t * t * t);
  };
  const double sigma = kPref * integrate_half_line([&](double t) { return base(t * t); }, 0.0,
                                                   sig_tail).value;
  const double g0 =
      2.0 * kPref *
      integrate_half_line([&](double t) { return t * t * base(t * t); }, 0.0, base_tail(0.0)).value;

  // the response is affine in the bump amplitude: precompute both parts on
  // the probe sample, then bisect on the amplitude alone
  const int m = 400;
  std::vector<double> y(m), fix(m), bump(m), target(m);
  for (int j = 0; j < m; ++j) {
    y[j] = r_probe * std::pow((j + 1.0) / m, 1.5);
    const double s = std::sqrt(-y[j]);
    const double yj = y[j];
    auto gauss_part = [yj, a0, b0](double t) {
      const double r = yj + t * t;
      return t * t * std::exp(-r * r) * (a0 + b0 * r);
    };
    auto base_part = [&base, yj](double t) { return t * t * base(yj + t * t); };
    auto bump_part = [yj, beta](double t) {
      const double r = yj + t * t;
      return t * t * r * r * std::pow(1.0 + r * r, -0.5 * (beta + 2.0));
    };
    fix[j] = 2.0 * kPref * (integrate(gauss_part, 0.0, s).value +
                            integrate_half_line(base_part, s, base_tail(yj)).value);
    bump[j] = 2.0 * kPref * integrate(bump_part, 0.0, s).value;
    target[j] = g0 - sigma * y[j];
  }

  auto admissible = [&](double c) {
    for (int j = 0; j < m; ++j)
      if (fix[j] + c * bump[j] < target[j] - 1e-12 * (1.0 + std::abs(target[j]))) return false;
    return true;
  };

  if (admissible(0.0)) return std::max(1e-12, 1e-12 * (1.0 + margin));
  double lo = 0.0, hi = 1.0;
  while (!admissible(hi)) {
    hi *= 2.0;
    if (hi > 1e9) throw std::runtime_error("calibrate_c_beta: no admissible amplitude below 1e9");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? hi : lo) = mid;
  }
  return hi * (1.0 + margin);
}

}  // namespace vps
