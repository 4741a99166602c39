#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vps/quadrature.hpp"

using vps::integrate;
using vps::integrate_half_line;
using vps::QuadOptions;

TEST_CASE("polynomials come out exact on a single panel") {
  auto cubic = [](double x) { return ((2.0 * x - 3.0) * x + 0.5) * x - 1.0; };
  // antiderivative: x^4/2 - x^3 + x^2/4 - x
  const double exact = (0.5 * 16.0 - 8.0 + 1.0 - 2.0) - (0.5 - (-1.0) + 0.25 + 1.0);
  CHECK(integrate(cubic, -1.0, 2.0).value == doctest::Approx(exact).epsilon(1e-14));

  auto deg10 = [](double x) { return std::pow(x, 10); };
  CHECK(integrate(deg10, 0.0, 1.0).value == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("smooth transcendental integrands") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value ==
        doctest::Approx(2.0).epsilon(1e-14));
  // moderately oscillatory: forces a few refinement levels
  const auto res = integrate([](double x) { return std::cos(25.0 * x); }, 0.0, 3.0);
  CHECK(res.value == doctest::Approx(std::sin(75.0) / 25.0).epsilon(1e-12));
  CHECK(res.intervals > 1);
}

TEST_CASE("integrable endpoint singularity") {
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-10;
  const auto res = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
  CHECK(std::abs(res.value - 2.0) < 1e-8);
}

TEST_CASE("half-line rule with a certified tail") {
  // int_0^inf sqrt(t) e^{-t} dt = Gamma(3/2) = sqrt(pi)/2
  auto f = [](double t) { return std::sqrt(t) * std::exp(-t); };
  auto tail = [](double x) { return 2.0 * (std::sqrt(x) + 1.0) * std::exp(-x); };
  const auto res = integrate_half_line(f, 0.0, tail);
  CHECK(res.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));

  // int_0^inf t^2 e^{-t^2} dt = sqrt(pi)/4
  auto g = [](double t) { return t * t * std::exp(-t * t); };
  auto gtail = [](double x) { return (x + 1.0) * std::exp(-x * x); };
  CHECK(integrate_half_line(g, 0.0, gtail).value ==
        doctest::Approx(0.25 * std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("budget exhaustion reports instead of silently degrading") {
  QuadOptions opt;
  opt.abs_tol = 1e-16;
  opt.rel_tol = 1e-16;
  opt.max_intervals = 4;
  CHECK_THROWS_AS(integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 10.0, opt),
                  vps::QuadratureError);
}

TEST_CASE("golden-section minimizer") {
  const double x = vps::golden_min([](double t) { return (t - 1.7) * (t - 1.7) + 3.0; }, -4.0,
                                   6.0, 1e-10);
  CHECK(x == doctest::Approx(1.7).epsilon(1e-8));
  // flat-bottomed quartic still lands inside the basin
  const double y =
      vps::golden_min([](double t) { return std::pow(t - 0.25, 4); }, -2.0, 2.0, 1e-10);
  CHECK(std::abs(y - 0.25) < 1e-3);
}
