#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracle_values.hpp"
#include "vacpol/errors.hpp"
#include "vacpol/spectral_density.hpp"

using namespace vacpol::spectral;
using vacpol::ValidationError;

namespace {

PhysicalParams tiny_params() {
  PhysicalParams p;
  p.Z = 92;
  p.alpha = 0.6712 / 92.0;
  p.lambda_ir = 0.13424;
  p.lambda0 = 5.0;
  p.K = 2;
  p.M_lambda = 3;
  p.a_bound = 0.5;
  p.b_bound = 2.0;
  return p;
}

} // namespace

TEST_CASE("params validation catches inconsistent input") {
  PhysicalParams p = tiny_params();
  CHECK_NOTHROW(p.validate());
  p.lambda_ir = 6.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = tiny_params();
  p.alpha = 0.02;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = tiny_params();
  p.K = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("default working window follows the cutoffs") {
  PhysicalParams p = tiny_params();
  p.a_bound = 0.0;
  p.b_bound = 0.0;
  CHECK(p.a_eff() == doctest::Approx(2.0 / p.lambda0));
  CHECK(p.b_eff() ==
        doctest::Approx(p.K / (2.0 * p.gamma() * std::sqrt(p.lambda0))));
}

TEST_CASE("grid points outside the working window are refused") {
  const PhysicalParams p = tiny_params();
  CHECK_THROWS_AS((void)channel_density(p, -1, {0.4}), ValidationError);
  CHECK_THROWS_AS((void)channel_density(p, -1, {2.5}), ValidationError);
  CHECK_THROWS_AS((void)channel_density(p, -1, {1.0, 0.9}), ValidationError);
  CHECK_THROWS_AS((void)channel_density(p, 0, {1.0}), ValidationError);
  CHECK_THROWS_AS((void)channel_density(p, 3, {1.0}), ValidationError);
}

TEST_CASE("channel momentum integral matches the high-precision oracle") {
  const PhysicalParams p = tiny_params();
  const ChannelDensity ch = channel_density(p, -1, {1.0});
  CHECK(ch.y_minus[0] ==
        doctest::Approx(oracle::kChannelYMinusKm1X1).epsilon(1e-9));
}

TEST_CASE("panel refinement leaves the channel integral unchanged") {
  const PhysicalParams p = tiny_params();
  QuadratureSpec coarse;
  coarse.max_panel_width = (p.lambda0 - p.lambda_ir) / 2.0;
  QuadratureSpec fine;
  fine.max_panel_width = (p.lambda0 - p.lambda_ir) / 16.0;
  const ChannelDensity a = channel_density(p, 1, {1.0, 1.5}, coarse);
  const ChannelDensity b = channel_density(p, 1, {1.0, 1.5}, fine);
  for (std::size_t i = 0; i < 2; ++i) {
    const double diff_a = a.y_minus[i] - a.y_plus[i];
    const double diff_b = b.y_minus[i] - b.y_plus[i];
    CHECK(std::abs(diff_a - diff_b) / std::abs(diff_b) < 1e-4);
  }
}

TEST_CASE("free theory polarizes nothing") {
  PhysicalParams p = tiny_params();
  p.Z = 1;
  p.alpha = 1e-9;
  p.lambda_ir = 0.5;
  p.M_lambda = 1;

  SUBCASE("mirror channels swap the branches") {
    const ChannelDensity minus = channel_density(p, -1, {1.0, 1.7});
    const ChannelDensity plus = channel_density(p, 1, {1.0, 1.7});
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(minus.y_minus[i] ==
            doctest::Approx(plus.y_plus[i]).epsilon(1e-6));
      CHECK(plus.y_minus[i] ==
            doctest::Approx(minus.y_plus[i]).epsilon(1e-6));
      CHECK(minus.y_bound[i] == 0.0);
      CHECK(plus.y_bound[i] == 0.0);
    }
  }

  SUBCASE("assembled density vanishes") {
    const SampledDensity d = assemble_density(p, {1.0, 1.3, 1.7});
    for (double v : d.y)
      CHECK(std::abs(v) < 1e-6);
  }
}

TEST_CASE("assembly matches the hand-built channel sum") {
  const PhysicalParams p = tiny_params();
  const std::vector<double> grid{0.8, 1.2};
  const SampledDensity d = assemble_density(p, grid);
  std::vector<double> manual(grid.size(), 0.0);
  for (int kappa : {-1, 1, -2, 2}) {
    const ChannelDensity ch = channel_density(p, kappa, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      manual[i] += 2.0 * std::abs(kappa) *
                   (ch.y_minus[i] - ch.y_plus[i] - ch.y_bound[i]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(d.y[i] == doctest::Approx(manual[i]).epsilon(1e-12));
  CHECK(d.channels.empty());
}

TEST_CASE("parallel assembly reproduces the serial reduction bitwise") {
  const PhysicalParams p = tiny_params();
  const std::vector<double> grid{0.8, 1.2, 1.6};
  const SampledDensity serial = assemble_density(p, grid, {}, 1, true);
  const SampledDensity parallel = assemble_density(p, grid, {}, 2, true);
  REQUIRE(serial.y.size() == parallel.y.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(serial.y[i] == parallel.y[i]);
  REQUIRE(parallel.channels.size() == 4);
  CHECK(parallel.channels[0].kappa == -1);
  CHECK(parallel.channels[1].kappa == 1);
  CHECK(parallel.channels[3].kappa == 2);
}

TEST_CASE("channel contributions decay at large |kappa|") {
  PhysicalParams p = tiny_params();
  p.K = 6;
  p.b_bound = 1.2;
  const std::vector<double> grid{1.0};
  std::vector<double> magnitude;
  for (int k = 1; k <= p.K; ++k) {
    const ChannelDensity ch = channel_density(p, -k, grid);
    const ChannelDensity cp = channel_density(p, k, grid);
    const double total =
        2.0 * k *
        (std::abs(ch.y_minus[0] - ch.y_plus[0] - ch.y_bound[0]) +
         std::abs(cp.y_minus[0] - cp.y_plus[0] - cp.y_bound[0]));
    magnitude.push_back(total);
  }
  CHECK(magnitude[5] < magnitude[2]);
  CHECK(magnitude[5] < magnitude[3]);
}

TEST_CASE("uniform_grid spans the window inclusively") {
  const auto g = uniform_grid(0.5, 2.0, 7);
  CHECK(g.size() == 7);
  CHECK(g.front() == doctest::Approx(0.5));
  CHECK(g.back() == doctest::Approx(2.0));
  CHECK(g[1] - g[0] == doctest::Approx(0.25));
}
