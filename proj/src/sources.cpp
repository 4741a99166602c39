#include "vps/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace vps {

double ChargeMeasure::theta() const {
  double t = 0.0;
  for (const auto& p : points) t += p.q;
  if (smooth) t += box_integral(*smooth);
  return t;
}

double ChargeMeasure::total_variation() const {
  double t = 0.0;
  for (const auto& p : points) t += std::abs(p.q);
  if (smooth) {
    double s = 0.0;
    for (double v : smooth->values) s += std::abs(v);
    const double h = smooth->h();
    t += s * h * h * h;
  }
  return t;
}

double yukawa(double sigma, double dist) {
  if (!(sigma > 0.0)) throw std::invalid_argument("yukawa: sigma must be positive");
  if (!(dist > 0.0)) throw std::domain_error("yukawa: kernel evaluated at the singularity");
  return std::exp(-std::sqrt(sigma) * dist) / (4.0 * M_PI * dist);
}

double yukawa(double sigma, const std::array<double, 3>& x) {
  return yukawa(sigma, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
}

namespace {

// distance at which a unit charge's kernel drops below tol
double kernel_cutoff(double sigma, double tol) {
  const double a = std::sqrt(sigma);
  double d = 30.0 / a;
  for (int it = 0; it < 4; ++it) d = (-std::log(tol) - std::log(4.0 * M_PI * d)) / a;
  return d;
}

}  // namespace

double SourceField::point_part(const std::array<double, 3>& x) const {
  const double L = nodes_.box_size;
  const double a = std::sqrt(sigma_);
  double acc = 0.0;
  for (std::size_t c = 0; c < mu_.points.size(); ++c) {
    const auto& p = mu_.points[c];
    for (int ia = -2; ia <= 2; ++ia)
      for (int ib = -2; ib <= 2; ++ib)
        for (int ic = -2; ic <= 2; ++ic) {
          const double dx = x[0] - p.pos[0] - ia * L;
          const double dy = x[1] - p.pos[1] - ib * L;
          const double dz = x[2] - p.pos[2] - ic * L;
          const double d2 = dx * dx + dy * dy + dz * dz;
          if (d2 > cut2_[c]) continue;
          if (d2 < 1e-24)
            throw std::domain_error("SourceField: evaluation at a point charge");
          const double d = std::sqrt(d2);
          acc += p.q * std::exp(-a * d) / (4.0 * M_PI * d);
        }
  }
  return acc;
}

double SourceField::operator()(const std::array<double, 3>& x) const {
  double v = point_part(x);
  if (mu_.smooth) v += interpolate(smooth_, x);
  return v;
}

SourceField build_S(const ChargeMeasure& mu, double sigma, const SpectralBox& box) {
  if (!(sigma > 0.0)) throw std::invalid_argument("build_S: sigma must be positive");
  SourceField s;
  s.mu_ = mu;
  s.sigma_ = sigma;
  const int n = box.n();
  const double L = box.box_size();

  s.cut2_.resize(mu.points.size());
  for (std::size_t c = 0; c < mu.points.size(); ++c) {
    const double q = std::abs(mu.points[c].q);
    const double d = kernel_cutoff(sigma, q > 0.0 ? 1e-16 / q : 1.0);
    s.cut2_[c] = d * d;
  }

  if (mu.smooth) {
    if (mu.smooth->n != n || mu.smooth->box_size != L)
      throw std::invalid_argument("build_S: smooth charge grid does not match the box");
    s.smooth_ = box.solve_helmholtz(sigma, *mu.smooth);
  } else {
    s.smooth_ = ScalarField::zeros(L, n);
  }

  // charges must stay clear of the grid nodes; the kernel is singular there
  const double h = L / n;
  for (const auto& p : mu.points) {
    if (!(std::abs(p.q) > 0.0)) continue;
    const double o0 = std::abs(std::remainder(p.pos[0], h));
    const double o1 = std::abs(std::remainder(p.pos[1], h));
    const double o2 = std::abs(std::remainder(p.pos[2], h));
    if (o0 < 1e-9 * h && o1 < 1e-9 * h && o2 < 1e-9 * h)
      throw std::invalid_argument("build_S: point charge coincides with a grid node");
  }

  s.nodes_ = ScalarField::zeros(L, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        s.nodes_.at(i, j, k) =
            s.point_part({i * h, j * h, k * h}) + s.smooth_.at(i, j, k);
  return s;
}

AuxFields build_H1_H(const GTransform& g, const SourceField& s, const SpectralBox& box) {
  AuxFields out;
  out.w0 = b_apply(g, s.node_values());
  out.h1 = box.solve_poisson_zero_mean(out.w0, &out.removed_mean);

  // Restore the physical gauge: the decaying free-space potential of a
  // localized source has box mean ~ mass * mean of the Coulomb kernel about
  // the source centroid, which the zero-mean solve subtracted.
  const int n = out.w0.n;
  const double L = out.w0.box_size, h = out.w0.h();
  double mass = 0.0;
  std::array<double, 3> centroid{0.0, 0.0, 0.0};
  const double mid = 0.5 * L;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double w = out.w0.at(i, j, k);
        mass += w;
        centroid[0] += w * (mid + std::remainder(i * h - mid, L));
        centroid[1] += w * (mid + std::remainder(j * h - mid, L));
        centroid[2] += w * (mid + std::remainder(k * h - mid, L));
      }
  if (mass > 0.0) {
    for (double& c : centroid) c /= mass;
    double mean_phi = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double dx = std::remainder(i * h - centroid[0], L);
          const double dy = std::remainder(j * h - centroid[1], L);
          const double dz = std::remainder(k * h - centroid[2], L);
          const double d = std::max(std::sqrt(dx * dx + dy * dy + dz * dz), 0.5 * h);
          mean_phi += 1.0 / (4.0 * M_PI * d);
        }
    mean_phi /= static_cast<double>(out.w0.size());
    out.gauge_offset = mass * h * h * h * mean_phi;
    for (double& v : out.h1.values) v += out.gauge_offset;
  }

  out.h = ScalarField::zeros(L, n);
  const double c0 = g.c0(), alpha = g.alpha();
  const auto& sv = s.node_values().values;
  for (std::size_t i = 0; i < out.h.values.size(); ++i) {
    const double m = std::abs(sv[i]) + std::abs(out.h1.values[i]);
    out.h.values[i] = c0 * std::min(std::pow(m, alpha), m * m);
  }
  return out;
}

}  // namespace vps
