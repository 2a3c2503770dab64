#include <cmath>
#include <complex>

#include <doctest.h>

#include "oracle_values.hpp"
#include "vacpol/errors.hpp"
#include "vacpol/specfun.hpp"

using vacpol::specfun::cd;
using vacpol::specfun::expint_en;
using vacpol::specfun::gamma;
using vacpol::specfun::hyp1f1;
using vacpol::specfun::log_gamma;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }
} // namespace

TEST_CASE("gamma reproduces classic real values") {
  CHECK(rel_err(gamma(cd(1.0)), cd(1.0)) < 1e-14);
  CHECK(rel_err(gamma(cd(0.5)), cd(std::sqrt(kPi))) < 1e-14);
  CHECK(rel_err(gamma(cd(5.0)), cd(24.0)) < 1e-14);
  CHECK(rel_err(gamma(cd(0.25)), cd(oracle::kGammaQuarter)) < 1e-13);
}

TEST_CASE("gamma matches the high-precision complex oracle") {
  CHECK(rel_err(gamma(cd(1.0, 1.0)), oracle::kGamma1PlusI) < 1e-12);
  CHECK(rel_err(gamma(cd(3.0, -2.0)), oracle::kGamma3Minus2I) < 1e-12);
}

TEST_CASE("log_gamma matches the oracle far up the imaginary axis") {
  const cd got = log_gamma(cd(0.5, 10.0));
  CHECK(std::abs(got - oracle::kLogGammaHalfPlus10I) < 1e-12);
}

TEST_CASE("gamma throws at non-positive integer poles") {
  CHECK_THROWS_AS((void)gamma(cd(0.0)), std::domain_error);
  CHECK_THROWS_AS((void)gamma(cd(-3.0)), std::domain_error);
  CHECK_THROWS_AS((void)log_gamma(cd(-1.0)), std::domain_error);
  CHECK_NOTHROW((void)gamma(cd(-3.0, 1e-8)));
}

TEST_CASE("gamma reflection magnitude on the imaginary axis") {
  for (double y = 0.1; y <= 10.0; y += 0.1) {
    const double got = std::norm(gamma(cd(0.0, y)));
    const double want = kPi / (y * std::sinh(kPi * y));
    CHECK(std::abs(got - want) / want < 1e-10);
  }
}

TEST_CASE("gamma satisfies the shift identity on a complex grid") {
  for (double re = -4.5; re <= 4.5; re += 1.0)
    for (double im = -5.0; im <= 5.0; im += 2.5) {
      const cd z(re, im == 0.0 ? 0.3 : im);
      CHECK(rel_err(gamma(z + cd(1.0)), z * gamma(z)) < 1e-11);
    }
}

TEST_CASE("hyp1f1 trivial identities") {
  CHECK(hyp1f1(cd(0.7, 0.2), cd(1.9), cd(0.0)) == cd(1.0));
  CHECK(rel_err(hyp1f1(cd(1.0), cd(2.0), cd(1.0)),
                cd(std::exp(1.0) - 1.0)) < 1e-13);
  CHECK(rel_err(hyp1f1(cd(-1.0), cd(3.0), cd(2.0)), cd(1.0 / 3.0)) < 1e-14);
}

TEST_CASE("hyp1f1 polynomial branch handles large arguments exactly") {
  // a = -n stays a finite sum no matter how large |z| gets
  const cd got = hyp1f1(cd(-3.0), cd(2.5), cd(120.0, 40.0));
  cd term(1.0), sum(1.0);
  for (int k = 0; k < 3; ++k) {
    term *= (cd(-3.0) + cd(k)) / (cd(2.5) + cd(k)) * cd(120.0, 40.0) /
            cd(k + 1.0);
    sum += term;
  }
  CHECK(rel_err(got, sum) < 1e-13);
}

TEST_CASE("hyp1f1 matches the high-precision oracle") {
  CHECK(rel_err(hyp1f1(cd(0.5, 1.2), cd(2.34), cd(0.0, 7.0)),
                oracle::kHyp1f1A) < 1e-10);
  CHECK(rel_err(hyp1f1(cd(1.671, -0.879), cd(4.342), cd(0.0, 60.0)),
                oracle::kHyp1f1B) < 1e-10);
  CHECK(rel_err(hyp1f1(cd(0.8, 0.3), cd(1.6), cd(-20.0, 35.0)),
                oracle::kHyp1f1C) < 1e-10);
  CHECK(rel_err(hyp1f1(cd(2.5), cd(3.5), cd(42.0)), oracle::kHyp1f1D) <
        1e-10);
}

TEST_CASE("hyp1f1 satisfies the Kummer transformation") {
  const cd as[] = {cd(0.3, 0.7), cd(1.2, -0.4), cd(2.0, 1.5)};
  const cd bs[] = {cd(1.7), cd(2.34, 0.0), cd(3.1)};
  const cd zs[] = {cd(2.0, 3.0), cd(-8.0, 5.0), cd(0.0, 30.0), cd(12.0, 0.0)};
  for (const cd &a : as)
    for (const cd &b : bs)
      for (const cd &z : zs) {
        const cd lhs = hyp1f1(a, b, z);
        const cd rhs = std::exp(z) * hyp1f1(b - a, b, -z);
        CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-9);
      }
}

TEST_CASE("hyp1f1 rejects non-positive integer b") {
  CHECK_THROWS_AS((void)hyp1f1(cd(1.0), cd(0.0), cd(1.0)), std::domain_error);
  CHECK_THROWS_AS((void)hyp1f1(cd(1.0), cd(-2.0), cd(1.0)),
                  std::domain_error);
}

TEST_CASE("expint_en reproduces known values") {
  CHECK(expint_en(2, 0.0) == 1.0);
  CHECK(expint_en(5, 0.0) == 0.25);
  CHECK(std::abs(expint_en(1, 1.0) - oracle::kE1At1) < 1e-14);
  CHECK(std::abs(expint_en(2, 0.3) - oracle::kE2At0p3) < 1e-14);
  CHECK(std::abs(expint_en(5, 2.7) - oracle::kE5At2p7) < 1e-15);
}

TEST_CASE("expint_en satisfies the order recurrence") {
  for (int n = 1; n <= 6; ++n)
    for (double p : {0.01, 0.05, 0.2, 0.6, 1.0, 2.5, 7.0, 20.0}) {
      const double lhs = n * expint_en(n + 1, p);
      const double rhs = std::exp(-p) - p * expint_en(n, p);
      CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("expint_en rejects invalid domains") {
  CHECK_THROWS_AS((void)expint_en(1, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)expint_en(2, -0.5), std::domain_error);
  CHECK_THROWS_AS((void)expint_en(-1, 1.0), std::domain_error);
}
