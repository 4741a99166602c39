#include "vps/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vps {

namespace {

double edge_slope(double h0, double h1, double d0, double d1) {
  // one-sided three-point estimate, clamped so the end interval stays monotone
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (d * d0 <= 0.0) return 0.0;
  if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
  return d;
}

}  // namespace

Pchip Pchip::fit(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("Pchip::fit: need >= 2 nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("Pchip::fit: nodes not increasing");

  std::vector<double> h(n - 1), del(n - 1), d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = del[0];
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (del[i - 1] * del[i] <= 0.0) {
        d[i] = 0.0;
      } else {
        // weighted harmonic mean of the neighbouring secants
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
      }
    }
    d[0] = edge_slope(h[0], h[1], del[0], del[1]);
    d[n - 1] = edge_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  }

  Pchip p;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  p.d_ = std::move(d);
  return p;
}

Pchip Pchip::hermite(std::vector<double> x, std::vector<double> y, std::vector<double> d) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n || d.size() != n)
    throw std::invalid_argument("Pchip::hermite: need >= 2 nodes with matching slopes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("Pchip::hermite: nodes not increasing");

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double del = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    if (del == 0.0) {
      d[i] = 0.0;
      d[i + 1] = 0.0;
      continue;
    }
    if (d[i] / del < 0.0) d[i] = 0.0;
    if (d[i + 1] / del < 0.0) d[i + 1] = 0.0;
    const double a = d[i] / del, b = d[i + 1] / del;
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      d[i] = tau * a * del;
      d[i + 1] = tau * b * del;
    }
  }

  Pchip p;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  p.d_ = std::move(d);
  return p;
}

std::size_t Pchip::locate(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_[x_.size() - 2]) return x_.size() - 2;
  return static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
}

double Pchip::operator()(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double Pchip::derivative(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double g00 = (6.0 * t2 - 6.0 * t) / h;
  const double g10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double g01 = -g00;
  const double g11 = 3.0 * t2 - 2.0 * t;
  return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

}  // namespace vps
