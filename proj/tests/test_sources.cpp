#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vps/gtransform.hpp"
#include "vps/profile.hpp"
#include "vps/sources.hpp"
#include "vps/spectral.hpp"

using namespace vps;

TEST_CASE("screened kernel closed-form values") {
  CHECK(yukawa(1.0, 1.0) == doctest::Approx(0.029274915762159584).epsilon(1e-15));
  CHECK(yukawa(4.0, 0.75) == doctest::Approx(0.023674845293672562).epsilon(1e-14));
  // scaling: sqrt(sigma) only enters through the exponent
  for (double d : {0.3, 1.0, 2.5})
    CHECK(yukawa(2.0, d) ==
          doctest::Approx(std::exp(-std::sqrt(2.0) * d) / (4.0 * M_PI * d)).epsilon(1e-15));
  CHECK(yukawa(1.0, std::array<double, 3>{3.0, 0.0, 4.0}) ==
        doctest::Approx(yukawa(1.0, 5.0)).epsilon(1e-15));
  CHECK_THROWS(yukawa(0.0, 1.0));
  CHECK_THROWS(yukawa(1.0, 0.0));
}

TEST_CASE("point potential: periodic, symmetric, decaying") {
  const SpectralBox box(22.0, 32);
  ChargeMeasure mu;
  mu.points.push_back({{11.17, 11.17, 11.17}, 1.0});
  const SourceField s = build_S(mu, 1.0, box);

  const std::array<double, 3> p{13.0, 10.0, 12.0};
  const double v = s(p);
  CHECK(s({p[0] + 22.0, p[1], p[2]}) == doctest::Approx(v).epsilon(1e-12));
  CHECK(s({p[0], p[1] - 22.0, p[2] + 22.0}) == doctest::Approx(v).epsilon(1e-12));

  // mirror through the charge
  const double d = 2.3;
  CHECK(s({11.17 + d, 11.17, 11.17}) == doctest::Approx(s({11.17 - d, 11.17, 11.17})).epsilon(1e-10));

  // near field is the free-space kernel (images are e^{-22} down)
  CHECK(s({11.17 + 0.4, 11.17, 11.17}) == doctest::Approx(yukawa(1.0, 0.4)).epsilon(1e-8));

  CHECK(s.box_integral() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.theta() == 1.0);
}

TEST_CASE("charge on a grid node is rejected") {
  const SpectralBox box(22.0, 32);
  ChargeMeasure mu;
  mu.points.push_back({{11.0, 11.0, 11.0}, 1.0});  // 16 * h exactly
  CHECK_THROWS(build_S(mu, 1.0, box));
}

TEST_CASE("evaluating at the charge location is rejected") {
  const SpectralBox box(22.0, 32);
  ChargeMeasure mu;
  mu.points.push_back({{11.17, 11.17, 11.17}, 1.0});
  const SourceField s = build_S(mu, 1.0, box);
  CHECK_THROWS_AS(s.point_part({11.17, 11.17, 11.17}), std::domain_error);
}

TEST_CASE("uniform smooth background solves to a constant") {
  const SpectralBox box(22.0, 32);
  ChargeMeasure mu;
  ScalarField rho = ScalarField::zeros(22.0, 32);
  for (double& v : rho.values) v = 0.3;
  mu.smooth = rho;
  const double sigma = 1.3;
  const SourceField s = build_S(mu, sigma, box);
  for (int i = 0; i < 32; i += 5)
    CHECK(s.node_values().at(i, 7, 19) == doctest::Approx(0.3 / sigma).epsilon(1e-13));
  CHECK(s.theta() == doctest::Approx(0.3 * 22.0 * 22.0 * 22.0).epsilon(1e-13));
}

TEST_CASE("measure bookkeeping") {
  ChargeMeasure mu;
  mu.points.push_back({{0.5, 0.5, 0.5}, 2.0});
  mu.points.push_back({{1.5, 0.5, 0.5}, -3.0});
  CHECK(mu.theta() == doctest::Approx(-1.0));
  CHECK(mu.total_variation() == doctest::Approx(5.0));
}

TEST_CASE("majorant pair: zero measure gives zero fields") {
  const SpectralBox box(22.0, 32);
  const GTransform g = GTransform::build(ExtensionProfile(make_maxwellian(), 0.25, 0.02));
  const SourceField s = build_S(ChargeMeasure{}, g.sigma(), box);
  const AuxFields aux = build_H1_H(g, s, box);
  CHECK(sup_norm(aux.w0) == 0.0);
  CHECK(sup_norm(aux.h1) == 0.0);
  CHECK(sup_norm(aux.h) == 0.0);
  CHECK(aux.gauge_offset == 0.0);
}

TEST_CASE("majorant pair: cap recomputed pointwise") {
  const SpectralBox box(25.0, 64);
  const GTransform g = GTransform::build(ExtensionProfile(make_maxwellian(), 0.25, 0.02));
  ChargeMeasure mu;
  mu.points.push_back({{12.2, 12.6, 12.4}, 1.0});
  const SourceField s = build_S(mu, g.sigma(), box);
  const AuxFields aux = build_H1_H(g, s, box);
  const double a = g.alpha(), c0 = g.c0();
  for (int i = 0; i < 64; i += 7)
    for (int j = 0; j < 64; j += 9) {
      const double sv = std::abs(s.node_values().at(i, j, 32));
      const double hv = std::abs(aux.h1.at(i, j, 32));
      const double base = sv + hv;
      const double want = c0 * std::min(std::pow(base, a), base * base);
      CHECK(aux.h.at(i, j, 32) == doctest::Approx(want).epsilon(1e-12));
    }
  // the gauged coulomb majorant stays positive where it matters
  CHECK(aux.gauge_offset > 0.0);
  CHECK(vps::min_value(aux.h1) > 0.0);
}
