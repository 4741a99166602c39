#pragma once

#include <cstddef>
#include <vector>

namespace vps {

// Monotone cubic Hermite interpolant (Fritsch-Carlson derivative limiter).
// Preserves monotonicity of the data between nodes, which is what lets the
// interpolated density response inherit the decrease of its samples.
class Pchip {
 public:
  Pchip() = default;
  static Pchip fit(std::vector<double> x, std::vector<double> y);
  // Caller-supplied slopes (e.g. analytically known derivatives), pulled into
  // the monotone region per interval; accurate data passes through untouched
  // and the interpolant gains an order over fitted slopes.
  static Pchip hermite(std::vector<double> x, std::vector<double> y, std::vector<double> d);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& node_derivatives() const { return d_; }

 private:
  std::size_t locate(double x) const;
  std::vector<double> x_, y_, d_;
};

}  // namespace vps
