#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace vps {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error (bound for the tail part)
  int intervals = 0;   // panels used by the adaptive subdivision
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1,1].  Positive abscissae only;
// even entries are Kronrod-only nodes, odd entries carry the embedded Gauss rule.
inline constexpr double gk_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b;
  double value;   // Kronrod estimate
  double error;   // QUADPACK-style estimate
  bool operator<(const Panel& o) const {
    if (error != o.error) return error < o.error;
    return a < o.a;  // deterministic tie-break
  }
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * gk_x[i]);
    fv[14 - i] = f(c + h * gk_x[i]);
  }
  fv[7] = f(c);
  double kron = 0.0, gauss = 0.0, resabs = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double s = (i < 7) ? fv[i] + fv[14 - i] : fv[7];
    kron += gk_wk[i] * s;
    resabs += gk_wk[i] * ((i < 7) ? std::abs(fv[i]) + std::abs(fv[14 - i]) : std::abs(fv[7]));
    if (i % 2 == 1) gauss += gk_wg[i / 2] * s;
  }
  // deviation from the mean, for the scaled error heuristic
  const double mean = 0.5 * kron;
  double resasc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double d = (i < 7) ? std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean)
                             : std::abs(fv[7] - mean);
    resasc += gk_wk[i] * d;
  }
  kron *= h;
  gauss *= h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs(kron - gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  return Panel{a, b, kron, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval.  Splits the worst panel until
// the summed error estimate meets max(abs_tol, rel_tol*|I|); throws if the
// panel budget runs out first.
template <class F>
QuadResult integrate(F&& f, double a, double b, QuadOptions opt = {}) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0};
    throw QuadratureError("integrate: inverted interval");
  }
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk15(f, a, b));
  double total = heap.top().value, total_err = heap.top().error;
  int panels = 1;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (panels >= opt.max_intervals)
      throw QuadratureError("integrate: panel budget exhausted at error " +
                            std::to_string(total_err));
    detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw QuadratureError("integrate: interval underflow (non-integrable kink?)");
    detail::Panel left = detail::gk15(f, worst.a, mid);
    detail::Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  return {total, total_err, panels};
}

// Integral over [a, inf) for integrands with a certified decreasing tail
// bound: tail(x) >= |int_x^inf f|.  Works through geometrically growing
// segments and stops once the bound certifies the remainder.
template <class F, class Tail>
QuadResult integrate_half_line(F&& f, double a, Tail&& tail, QuadOptions opt = {}) {
  QuadResult out;
  double lo = a;
  double width = std::max(1.0, 0.5 * std::abs(a));
  QuadOptions seg = opt;
  for (int j = 0; j < 64; ++j) {
    const double rem = tail(lo);
    if (rem <= std::max(0.25 * opt.abs_tol, 0.25 * opt.rel_tol * std::abs(out.value))) {
      out.error += rem;
      return out;
    }
    seg.abs_tol = opt.abs_tol / (1 << std::min(j + 1, 40));
    seg.rel_tol = opt.rel_tol * 0.25;
    QuadResult part = integrate(f, lo, lo + width, seg);
    out.value += part.value;
    out.error += part.error;
    out.intervals += part.intervals;
    lo += width;
    width *= 2.0;
  }
  throw QuadratureError("integrate_half_line: tail bound never certified the remainder");
}

// Golden-section minimum of a unimodal function on [a,b]; returns argmin.
// Tolerance is on the abscissa.  Deterministic, derivative-free.
template <class F>
double golden_min(F&& f, double a, double b, double xtol = 1e-10) {
  static const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace vps
