#include "vps/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vps {

ScalarField ScalarField::zeros(double L, int n) {
  if (!(L > 0.0) || n < 2) throw std::invalid_argument("ScalarField: need L > 0, n >= 2");
  ScalarField f;
  f.box_size = L;
  f.n = n;
  f.values.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  return f;
}

double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double min_value(const ScalarField& f) {
  double m = f.values.empty() ? 0.0 : f.values[0];
  for (double v : f.values) m = std::min(m, v);
  return m;
}

double mean_value(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

double box_integral(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  const double h = f.h();
  return s * h * h * h;
}

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  const double h = f.h();
  return std::sqrt(s * h * h * h);
}

double lp_norm(const ScalarField& f, double p) {
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  const double h = f.h();
  return std::pow(s * h * h * h, 1.0 / p);
}

double interpolate(const ScalarField& f, const std::array<double, 3>& x) {
  const int n = f.n;
  const double h = f.h();
  double u[3];
  int i0[3], i1[3];
  for (int d = 0; d < 3; ++d) {
    double t = x[d] / h;
    double base = std::floor(t);
    u[d] = t - base;
    long b = static_cast<long>(base) % n;
    if (b < 0) b += n;
    i0[d] = static_cast<int>(b);
    i1[d] = (i0[d] + 1) % n;
  }
  double acc = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const double w = (a ? u[0] : 1.0 - u[0]) * (b ? u[1] : 1.0 - u[1]) * (c ? u[2] : 1.0 - u[2]);
        acc += w * f.at(a ? i1[0] : i0[0], b ? i1[1] : i0[1], c ? i1[2] : i0[2]);
      }
  return acc;
}

RadialField RadialField::zeros(double r_max, int n) {
  if (!(r_max > 0.0) || n < 4) throw std::invalid_argument("RadialField: need r_max > 0, n >= 4");
  RadialField f;
  f.r_max = r_max;
  f.n = n;
  f.values.assign(static_cast<std::size_t>(n - 1), 0.0);
  return f;
}

double sup_norm(const RadialField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const RadialField& f) {
  double s = 0.0;
  for (int i = 0; i < f.interior(); ++i) {
    const double r = f.r(i);
    s += r * r * f.values[i] * f.values[i];
  }
  return std::sqrt(4.0 * M_PI * s * f.h());
}

}  // namespace vps
