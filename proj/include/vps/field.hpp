#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace vps {

// Scalar samples on a periodic cube [0,L)^3, n nodes per axis, row-major
// with k fastest: index = (i*n + j)*n + k.
struct ScalarField {
  double box_size = 0.0;
  int n = 0;
  bool periodic = true;
  std::vector<double> values;

  static ScalarField zeros(double L, int n);

  double h() const { return box_size / n; }
  std::size_t size() const { return values.size(); }
  double& at(int i, int j, int k) { return values[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  double at(int i, int j, int k) const {
    return values[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
  std::array<double, 3> node(int i, int j, int k) const {
    const double s = h();
    return {i * s, j * s, k * s};
  }
  bool same_grid(const ScalarField& o) const { return n == o.n && box_size == o.box_size; }
};

double sup_norm(const ScalarField& f);
double min_value(const ScalarField& f);
double mean_value(const ScalarField& f);
double l2_norm(const ScalarField& f);              // continuum-scaled: sqrt(sum v^2 h^3)
double lp_norm(const ScalarField& f, double p);    // (sum |v|^p h^3)^(1/p)
double box_integral(const ScalarField& f);         // sum v h^3

// Periodic trilinear interpolation at an arbitrary point.
double interpolate(const ScalarField& f, const std::array<double, 3>& x);

// Radial samples on the uniform mesh r_i = i*h, i = 1..n-1, with an implied
// regular value at r=0 and a Dirichlet zero at r_max = n*h.
struct RadialField {
  double r_max = 0.0;
  int n = 0;
  std::vector<double> values;  // n-1 interior values

  static RadialField zeros(double r_max, int n);

  double h() const { return r_max / n; }
  double r(int i) const { return (i + 1) * h(); }  // i = 0..n-2
  int interior() const { return n - 1; }
};

double sup_norm(const RadialField& f);
double l2_norm(const RadialField& f);  // sqrt(sum 4 pi r^2 v^2 h)

}  // namespace vps
