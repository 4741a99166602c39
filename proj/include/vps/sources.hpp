#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vps/field.hpp"
#include "vps/gtransform.hpp"
#include "vps/spectral.hpp"

namespace vps {

struct PointCharge {
  std::array<double, 3> pos{0.0, 0.0, 0.0};
  double q = 0.0;
};

// Background charge: finitely many points plus an optional absolutely
// continuous part sampled on the grid.
struct ChargeMeasure {
  std::vector<PointCharge> points;
  std::optional<ScalarField> smooth;

  double theta() const;            // signed total charge
  double total_variation() const;  // sum |q| + integral of |smooth|
};

// Screened-Coulomb kernel e^{-sqrt(sigma) d} / (4 pi d).
double yukawa(double sigma, double dist);
double yukawa(double sigma, const std::array<double, 3>& x);

// Screened potential S of the background measure on the periodic box.  The
// point part is evaluated analytically through a truncated image sum (shells
// to +-2, terms below 1e-16 relative skipped); the smooth part is a spectral
// solve.  Node values hold the total.
class SourceField {
 public:
  double operator()(const std::array<double, 3>& x) const;  // analytic + interpolated smooth
  double point_part(const std::array<double, 3>& x) const;

  const ScalarField& node_values() const { return nodes_; }
  const ScalarField& smooth_part() const { return smooth_; }
  const ChargeMeasure& measure() const { return mu_; }
  double sigma() const { return sigma_; }
  double theta() const { return mu_.theta(); }
  // integral of S over the box; exact up to dropped image tails
  double box_integral() const { return mu_.theta() / sigma_; }

 private:
  friend SourceField build_S(const ChargeMeasure&, double, const SpectralBox&);
  ChargeMeasure mu_;
  double sigma_ = 0.0;
  ScalarField nodes_, smooth_;
  std::vector<double> cut2_;  // per-charge squared truncation radius
};

SourceField build_S(const ChargeMeasure& mu, double sigma, const SpectralBox& box);

// Majorant pair of the fixed-point construction: h1 is the (gauged) Coulomb
// potential of the shifted response of S alone, h the growth-envelope cap.
struct AuxFields {
  ScalarField w0;  // shifted response of S
  ScalarField h1;
  ScalarField h;
  double removed_mean = 0.0;  // zero mode taken out of the Poisson solve
  double gauge_offset = 0.0;  // monopole constant restored afterwards
};

AuxFields build_H1_H(const GTransform& g, const SourceField& s, const SpectralBox& box);

}  // namespace vps
