#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vps/gtransform.hpp"
#include "vps/profile.hpp"

using vps::ExtensionProfile;
using vps::GTransform;
using vps::make_maxwellian;

namespace {

ExtensionProfile ext(double beta = 0.25, double c = 0.02) {
  return ExtensionProfile(make_maxwellian(), beta, c);
}

}  // namespace

TEST_CASE("maxwellian response is exp(-r) on the repulsive side") {
  // the extension never enters for r >= 0, so the closed form must hold
  const ExtensionProfile f = ext();
  for (double r : {0.0, 0.1, 1.0, 5.0, 12.0, 20.0})
    CHECK(vps::g_value(f, r) == doctest::Approx(std::exp(-r)).epsilon(1e-12));
  CHECK(vps::g_deriv(f, 0.0) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(vps::g_deriv(f, 2.0) == doctest::Approx(-std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("table tracks the closed form to 1e-8 on [0, 20]") {
  const GTransform g = GTransform::build(ext());
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double r = 20.0 * i / 2000.0;
    worst = std::max(worst, std::abs(g.g(r) - std::exp(-r)));
  }
  CHECK(worst <= 1e-8);
  CHECK(std::abs(g.sigma() - 1.0) <= 1e-6);
  CHECK(g.alpha() == doctest::Approx(1.25));
  CHECK(std::abs(g.raw_g0() - 1.0) <= 1e-9);
}

TEST_CASE("all structural conditions pass for the calibrated family") {
  const auto base = make_maxwellian();
  for (double beta : {0.1, 0.25, 0.4}) {
    const double c = vps::calibrate_c_beta(base, beta);
    const GTransform g = GTransform::build(ExtensionProfile(base, beta, c));
    const auto rep = g.verify();
    INFO("beta = ", beta);
    CHECK(rep.normalization.pass);
    CHECK(rep.monotonicity.pass);
    CHECK(rep.subdifferential.pass);
    CHECK(rep.growth.pass);
    CHECK(rep.sigma > 0.0);
    CHECK(rep.alpha == doctest::Approx(1.5 - beta));
  }
}

TEST_CASE("under-calibrated amplitude is caught by the tangent check") {
  const GTransform g = GTransform::build(ext(0.25, 1e-6));
  const auto rep = g.verify();
  CHECK_FALSE(rep.subdifferential.pass);
  CHECK(rep.subdifferential.worst_value < 0.0);
  CHECK(rep.subdifferential.worst_location < 0.0);
}

TEST_CASE("shifted response: zero at zero, nonnegative, enveloped") {
  const GTransform g = GTransform::build(ext());
  CHECK(g.b(0.0) == 0.0);
  const double a = g.alpha();
  // the envelope constants are fitted on nodes and midpoints; between those
  // samples the interpolant may graze the bound, hence the relative slack
  for (double y = -49.0; y < 0.0; y += 0.173) {
    const double bv = g.b(y);
    const double envelope = std::min(std::pow(std::abs(y), a), y * y);
    CHECK(bv >= 0.0);
    CHECK(bv >= g.c1() * envelope * (1.0 - 1e-4) - 1e-9);
    CHECK(bv <= g.c0() * envelope * (1.0 + 1e-4) + 1e-9);
  }
  for (double y = 0.05; y < 49.0; y += 0.311) {
    CHECK(g.b(y) >= 0.0);
    CHECK(g.b(y) <= g.c0() * std::min(std::pow(y, a), y * y) + 1e-9);
  }
}

TEST_CASE("tabulated values decrease strictly") {
  const GTransform g = GTransform::build(ext());
  const auto& vals = g.node_values();
  for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] < vals[i - 1]);
}

TEST_CASE("out-of-range behavior: clamp above, throw below") {
  const GTransform g = GTransform::build(ext());
  const auto before = g.clamp_count();
  CHECK(g.g(75.0) == g.g(50.0));
  CHECK(g.clamp_count() == before + 1);
  CHECK_THROWS_AS(g.g(-50.000001), std::out_of_range);
}

TEST_CASE("csv export shape") {
  const GTransform g = GTransform::build(ext(0.25, 0.02), -10.0, 10.0, 101);
  std::ostringstream os;
  g.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "r,g,gprime");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 101);
}

TEST_CASE("attractive ordering of extensions at shared amplitude") {
  const auto base = make_maxwellian();
  const double c = 0.05;
  const GTransform g1 = GTransform::build(ExtensionProfile(base, 0.1, c));
  const GTransform g2 = GTransform::build(ExtensionProfile(base, 0.4, c));
  for (double r = -45.0; r <= -0.05; r += 0.217) CHECK(g1.g(r) > g2.g(r));
  // and they agree identically on the repulsive side
  for (double r = 0.0; r <= 45.0; r += 0.5)
    CHECK(g1.g(r) == doctest::Approx(g2.g(r)).epsilon(1e-12));
}
