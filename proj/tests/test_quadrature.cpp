#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "vacpol/errors.hpp"
#include "vacpol/quadrature.hpp"

using namespace vacpol::quad;
using vacpol::NumericalError;
using vacpol::ValidationError;
using cd = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i)
    x[i] = a + (b - a) * i / double(n - 1);
  return x;
}
} // namespace

TEST_CASE("gl16 integrates polynomials up to degree 31 exactly") {
  for (int deg : {0, 1, 7, 16, 25, 31}) {
    const double got =
        gl16([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0);
    CHECK(std::abs(got - 1.0 / (deg + 1)) < 1e-14);
  }
}

TEST_CASE("composite_gl16 converges on an oscillatory integrand") {
  // int_0^{2 pi} cos(7x)^2 dx = pi
  const auto f = [](double x) {
    const double c = std::cos(7.0 * x);
    return c * c;
  };
  CHECK(std::abs(composite_gl16(f, 0.0, 2.0 * kPi, 8) - kPi) < 1e-12);
}

TEST_CASE("adaptive_gk reaches tight tolerances") {
  const double got =
      adaptive_gk([](double x) { return std::exp(-x * x); }, 0.0, 6.0);
  CHECK(std::abs(got - 0.5 * std::sqrt(kPi)) < 1e-13);

  // sharp peak forces recursion depth well past the first pass
  const double peak = adaptive_gk(
      [](double x) { return 1.0 / (1e-6 + (x - 0.3) * (x - 0.3)); }, 0.0,
      1.0, 1e-12);
  const double exact = (std::atan(0.7 / 1e-3) + std::atan(0.3 / 1e-3)) / 1e-3;
  CHECK(std::abs(peak - exact) / exact < 1e-11);
}

TEST_CASE("adaptive_gk_complex handles oscillatory phases") {
  const cd got = adaptive_gk_complex(
      [](double x) { return std::exp(cd(0.0, 5.0) * x); }, 0.0, 2.0);
  const cd exact = (std::exp(cd(0.0, 10.0)) - 1.0) / cd(0.0, 5.0);
  CHECK(std::abs(got - exact) < 1e-12);
}

TEST_CASE("adaptive_gk gives up on a non-integrable endpoint") {
  CHECK_THROWS_AS((void)adaptive_gk([](double x) { return 1.0 / x; }, 0.0,
                                    1.0, 1e-12),
                  NumericalError);
}

TEST_CASE("simpson_uniform matches closed forms") {
  SUBCASE("odd count") {
    const auto x = linspace(0.0, kPi, 201);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = std::sin(x[i]);
    CHECK(std::abs(simpson_uniform(x, y) - 2.0) < 1e-8);
  }
  SUBCASE("even count ends with the 3/8 block") {
    const auto x = linspace(0.0, 1.0, 200);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = std::exp(x[i]);
    CHECK(std::abs(simpson_uniform(x, y) - (std::exp(1.0) - 1.0)) < 1e-9);
  }
  SUBCASE("cubic exactness") {
    const auto x = linspace(0.0, 2.0, 5);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = x[i] * x[i] * x[i];
    CHECK(std::abs(simpson_uniform(x, y) - 4.0) < 1e-13);
  }
}

TEST_CASE("simpson_uniform rejects a non-uniform grid") {
  std::vector<double> x{0.0, 0.1, 0.25, 0.3, 0.4};
  std::vector<double> y(x.size(), 1.0);
  CHECK_THROWS_AS((void)simpson_uniform(x, y), ValidationError);
}

TEST_CASE("simpson_uniform_weighted applies the pointwise weight") {
  const auto x = linspace(0.0, 1.0, 401);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = x[i];
  const cd p(1.0, 2.0);
  const cd got = simpson_uniform_weighted(
      x, y, [p](double t) { return std::exp(-p * t); });
  // int_0^1 x e^{-px} dx = (1 - (1+p) e^{-p}) / p^2
  const cd exact = (1.0 - (1.0 + p) * std::exp(-p)) / (p * p);
  CHECK(std::abs(got - exact) < 1e-10);
}
