#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "vacpol/decompose.hpp"
#include "vacpol/errors.hpp"
#include "vacpol/laplace_basis.hpp"
#include "vacpol/spectral_density.hpp"
#include "vacpol/uehling.hpp"

using namespace vacpol::decomp;
using vacpol::NumericalError;
using vacpol::ValidationError;
using vacpol::laplace::transform_cos;

namespace {

const Window kWin{0.5, 3.0};

struct SyntheticSpec {
  double c1 = 0;
  double w1 = 0;
  double w5 = 0;
  double a_cos = 0;
  double b_sin = 0;
  double omega = 0;
  double gamma = 0;
};

vacpol::spectral::SampledDensity make_synthetic(const SyntheticSpec &s,
                                                int n = 257) {
  vacpol::spectral::SampledDensity d;
  d.x = vacpol::spectral::uniform_grid(kWin.a, kWin.b, n);
  d.y.resize(d.x.size());
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double x = d.x[i];
    double y = s.c1 * x + s.w1 / x + s.w5 / std::pow(x, 5);
    if (s.gamma != 0.0)
      y += vacpol::uehling::u_position(x, s.gamma);
    y += s.a_cos * std::cos(s.omega * x) + s.b_sin * std::sin(s.omega * x);
    d.y[i] = y;
  }
  return d;
}

std::vector<cd> mode_transform(const std::vector<double> &q_grid,
                               double amplitude, double omega) {
  std::vector<cd> r(q_grid.size());
  for (std::size_t i = 0; i < q_grid.size(); ++i)
    r[i] = amplitude * transform_cos(omega, cd(0.0, q_grid[i]), kWin);
  return r;
}

} // namespace

TEST_CASE("smooth synthetic is fitted in a single pass") {
  const SyntheticSpec s{0.3, 2.0, 0.05, 0.0, 0.0, 0.0, 0.0};
  const auto density = make_synthetic(s);
  const Decomposition dec = decompose(density, DecomposeOptions{});

  CHECK(dec.c1 == doctest::Approx(s.c1).epsilon(1e-3));
  CHECK(dec.w1 == doctest::Approx(s.w1).epsilon(1e-3));
  CHECK(dec.w5 == doctest::Approx(s.w5).epsilon(1e-3));
  CHECK(std::abs(dec.c2) < 1e-3);
  CHECK(dec.modes.empty());
  CHECK(dec.fit_iterations == 0);
  CHECK(dec.lls_residual_history.size() == 1);
  CHECK(dec.remainder_norm < 1e-3);
  CHECK(dec.oscillation_norm == 0.0);
}

TEST_CASE("oscillating synthetic recovers every coefficient") {
  SyntheticSpec s;
  s.c1 = 0.3;
  s.w1 = 2.0;
  s.w5 = 0.05;
  s.a_cos = 2.0;
  s.b_sin = -0.7;
  s.omega = 3.0;
  s.gamma = 0.6712;
  const auto density = make_synthetic(s);

  DecomposeOptions opts;
  opts.gamma = s.gamma;
  const Decomposition dec = decompose(density, opts);

  CHECK(dec.c1 == doctest::Approx(s.c1).epsilon(0.01));
  CHECK(dec.w1 == doctest::Approx(s.w1).epsilon(0.01));
  CHECK(dec.w5 == doctest::Approx(s.w5).epsilon(0.01));
  CHECK(std::abs(dec.c2) < 0.01);

  REQUIRE(dec.modes.size() == 1);
  CHECK(dec.modes[0].omega == doctest::Approx(s.omega).epsilon(0.01));
  const double amp =
      std::hypot(dec.modes[0].c_cos, dec.modes[0].c_sin);
  CHECK(amp == doctest::Approx(std::hypot(s.a_cos, s.b_sin)).epsilon(0.01));

  CHECK(dec.remainder_norm <= 0.1);
  CHECK(dec.oscillation_norm > 0.0);
  CHECK(dec.fit_iterations == 1);
  REQUIRE(dec.lls_residual_history.size() == 2);
  CHECK(dec.lls_residual_history[1] <=
        dec.lls_residual_history[0] * (1.0 + 1e-10) + 1e-12);
}

TEST_CASE("screening profile is removed before the fit") {
  SyntheticSpec s;
  s.w5 = 0.05;
  s.gamma = 0.6712;
  const auto density = make_synthetic(s);

  DecomposeOptions opts;
  opts.gamma = s.gamma;
  const Decomposition dec = decompose(density, opts);

  CHECK(dec.w5 == doctest::Approx(s.w5).epsilon(1e-4));
  CHECK(std::abs(dec.c1) < 1e-4);
  CHECK(std::abs(dec.c2) < 1e-4);
  CHECK(std::abs(dec.w1) < 1e-4);
  CHECK(dec.modes.empty());
}

TEST_CASE("frequency budget exhaustion throws") {
  SyntheticSpec s;
  s.a_cos = 2.0;
  s.omega = 3.0;
  const auto density = make_synthetic(s);

  DecomposeOptions opts;
  opts.max_frequencies = 0;
  CHECK_THROWS_AS(decompose(density, opts), NumericalError);
}

TEST_CASE("decompose input validation") {
  SyntheticSpec s;
  s.w1 = 1.0;
  auto density = make_synthetic(s, 7);
  CHECK_THROWS_AS(decompose(density, DecomposeOptions{}), ValidationError);

  density = make_synthetic(s, 33);
  density.y.pop_back();
  CHECK_THROWS_AS(decompose(density, DecomposeOptions{}), ValidationError);

  vacpol::spectral::SampledDensity narrow;
  narrow.x = vacpol::spectral::uniform_grid(0.5, 0.6, 11);
  narrow.y.assign(narrow.x.size(), 1.0);
  CHECK_THROWS_AS(decompose(narrow, DecomposeOptions{}), ValidationError);
}

TEST_CASE("find_frequency locates an injected tone") {
  std::vector<double> q_grid;
  for (double q = 0.5; q <= 8.01; q += 0.5)
    q_grid.push_back(q);

  SUBCASE("single tone") {
    const auto residual = mode_transform(q_grid, 2.0, 3.2);
    const SpikeResult spike =
        find_frequency(q_grid, residual, kWin, DecomposeOptions{});
    CHECK(spike.omega == doctest::Approx(3.2).epsilon(0.02));
    CHECK(spike.strength > 0.0);
    CHECK(std::abs(spike.c_cos) > 0.95);
    CHECK(std::hypot(spike.c_cos, spike.c_sin) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("the stronger of two tones wins") {
    auto residual = mode_transform(q_grid, 2.0, 2.0);
    const auto weak = mode_transform(q_grid, 0.5, 6.0);
    for (std::size_t i = 0; i < residual.size(); ++i)
      residual[i] += weak[i];
    const SpikeResult spike =
        find_frequency(q_grid, residual, kWin, DecomposeOptions{});
    CHECK(spike.omega == doctest::Approx(2.0).epsilon(0.05));
  }

  SUBCASE("monotone residual has no interior spike") {
    std::vector<cd> residual(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i)
      residual[i] = 1.0 / (1.0 + q_grid[i] * q_grid[i]);
    CHECK_THROWS_AS(
        find_frequency(q_grid, residual, kWin, DecomposeOptions{}),
        NumericalError);
  }

  SUBCASE("input validation") {
    const std::vector<double> two{1.0, 2.0};
    const std::vector<cd> two_r{cd(1.0), cd(1.0)};
    CHECK_THROWS_AS(find_frequency(two, two_r, kWin, DecomposeOptions{}),
                    ValidationError);
    std::vector<cd> misaligned(q_grid.size() - 1, cd(1.0));
    CHECK_THROWS_AS(
        find_frequency(q_grid, misaligned, kWin, DecomposeOptions{}),
        ValidationError);
  }
}

TEST_CASE("remainder_norm closed form") {
  const auto grid = vacpol::spectral::uniform_grid(kWin.a, kWin.b, 101);
  const std::vector<double> values(grid.size(), 0.2);
  const double e4 = (std::pow(kWin.a, -4) - std::pow(kWin.b, -4)) / 4.0;
  const double want =
      std::sqrt(0.2 * 0.2 * (kWin.b - kWin.a)) / ((kWin.b - kWin.a) * e4);
  CHECK(remainder_norm(grid, values, kWin) ==
        doctest::Approx(want).epsilon(1e-13));

  const std::vector<double> zero(grid.size(), 0.0);
  CHECK(remainder_norm(grid, zero, kWin) == 0.0);
}

TEST_CASE("oscillation_norm closed form") {
  const double e4 = (std::pow(kWin.a, -4) - std::pow(kWin.b, -4)) / 4.0;
  const double omega = 2.0;
  const double ic =
      (std::sin(omega * kWin.b) - std::sin(omega * kWin.a)) / omega;
  const double is =
      (std::cos(omega * kWin.a) - std::cos(omega * kWin.b)) / omega;

  const std::vector<Oscillation> one{{omega, 0.3, 0.4}};
  const double want_one = std::fabs(0.3 * ic + 0.4 * is) / e4;
  CHECK(oscillation_norm(one, kWin) ==
        doctest::Approx(want_one).epsilon(1e-12));

  const std::vector<Oscillation> two{{omega, 0.3, 0.4}, {5.0, -0.2, 0.1}};
  const double ic5 = (std::sin(5.0 * kWin.b) - std::sin(5.0 * kWin.a)) / 5.0;
  const double is5 = (std::cos(5.0 * kWin.a) - std::cos(5.0 * kWin.b)) / 5.0;
  const double v5 = -0.2 * ic5 + 0.1 * is5;
  const double want_two =
      std::sqrt(std::pow(0.3 * ic + 0.4 * is, 2) + v5 * v5) / e4;
  CHECK(oscillation_norm(two, kWin) ==
        doctest::Approx(want_two).epsilon(1e-12));

  CHECK(oscillation_norm({}, kWin) == 0.0);
}
