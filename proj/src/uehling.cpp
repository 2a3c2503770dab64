#include "vacpol/uehling.hpp"

#include <cmath>

#include "vacpol/errors.hpp"
#include "vacpol/quadrature.hpp"

namespace vacpol::uehling {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

//! upper limit for integrals against e^{-2 x cosh t}: the tail beyond
//! carries less than e^{-46} of the integrand scale
double cosh_cutoff(double x) { return std::acosh(1.0 + 23.0 / x); }

} // namespace

double pi_running(double p, double lambda0, PhotonMassForm form) {
  if (p < 0.0 || lambda0 <= 0.0)
    throw ValidationError("pi_running: need p >= 0 and lambda0 > 0");
  const double lead =
      std::log(lambda0 * lambda0) / (12.0 * kPi * kPi) -
      1.0 / (36.0 * kPi * kPi);
  return lead + pi_subtracted(p, form);
}

namespace {

// ((k+1)!)^2 / (k (2k+3)!), k = 1..14
constexpr double kLogMomentStd[14] = {
    0.0333333333333333333333,   0.00357142857142857142857,
    0.000529100529100529100529, 0.0000901875901875901875902,
    0.0000166500166500166500167, 3.23750323750323750324e-6,
    6.52941829412417647712e-7,  1.35313602805862867782e-7,
    2.86377995356323529698e-8,  6.16335250875565857394e-9,
    1.3447314564557800525e-9,   2.96754009680828005412e-10,
    6.61202567989112797204e-11, 1.48542051564374418727e-11};

//! the x-integral of x(1-x) log(M^2_x) in closed form; below the crossover
//! the closed form cancels, so an alternating power series in p^2 takes over
double log_mass_integral(double p, PhotonMassForm form) {
  const double u = p * p;
  if (form == PhotonMassForm::kStandard) {
    if (p <= 0.5) {
      double sum = 0.0, uk = 1.0;
      for (int k = 1; k <= 14; ++k) {
        uk *= u;
        sum += (k % 2 == 1 ? 1.0 : -1.0) * kLogMomentStd[k - 1] * uk;
      }
      return sum;
    }
    const double q = std::sqrt(u + 4.0);
    return -5.0 / 18.0 + 2.0 / (3.0 * u) +
           q * (u - 2.0) / (3.0 * u * p) * std::log(0.5 * (p + q));
  }
  if (p <= 0.5) {
    double sum = 0.0, uk = 1.0;
    for (int k = 1; k <= 24; ++k) {
      uk *= u;
      sum += (k % 2 == 1 ? 1.0 : -1.0) * uk / double(k * (k + 2) * (k + 3));
    }
    return sum;
  }
  const double el = std::log1p(u);
  return ((u + 1.0) * (u + 1.0) * (u - 2.0) * el + 2.0 * u * u + 2.0 * u -
          5.0 / 6.0 * u * u * u) /
         (6.0 * u * u * u);
}

} // namespace

double pi_subtracted(double p, PhotonMassForm form) {
  if (p < 0.0)
    throw ValidationError("pi_subtracted: need p >= 0");
  if (p == 0.0)
    return 0.0;
  return -log_mass_integral(p, form) / (2.0 * kPi * kPi);
}

double u_position(double x, double gamma) {
  if (!(x > 0.0))
    throw ValidationError("u_position: need x > 0");
  if (gamma == 0.0)
    return 0.0;
  const double integral = quad::adaptive_gk(
      [x](double t) {
        const double ch = std::cosh(t), sh = std::sinh(t);
        return sh * sh * (1.0 + 0.5 / ch) * std::exp(-2.0 * x * ch);
      },
      0.0, cosh_cutoff(x), 1e-12);
  return -16.0 * gamma / (3.0 * kPi) * x * integral;
}

std::complex<double> u_laplace(std::complex<double> p, double a, double b,
                               double gamma) {
  if (!(0.0 < a) || !(a <= b))
    throw ValidationError("u_laplace: need 0 < a <= b");
  if (p.real() < 0.0)
    throw ValidationError("u_laplace: need Re p >= 0");
  if (gamma == 0.0 || a == b)
    return 0.0;
  const auto integrand = [&](double t) {
    const double ch = std::cosh(t), sh = std::sinh(t);
    const std::complex<double> q = p + 2.0 * ch;
    const std::complex<double> ea = std::exp(-q * a), eb = std::exp(-q * b);
    const std::complex<double> core = (a * ea - b * eb + (ea - eb) / q) / q;
    return sh * sh * (1.0 + 0.5 / ch) * core;
  };
  const std::complex<double> integral =
      quad::adaptive_gk_complex(integrand, 0.0, cosh_cutoff(a), 1e-12);
  return -16.0 * gamma / (3.0 * kPi) * integral;
}

double neutrality_charge(double R, double sigma, PhotonMassForm form) {
  if (!(R > 0.0) || !(sigma > 0.0))
    throw ValidationError("neutrality_charge: need R > 0 and sigma > 0");
  const double p_max = 9.7 / sigma;
  return 2.0 / kPi *
         quad::adaptive_gk(
             [=](double p) {
               if (p == 0.0)
                 return 0.0;
               const double window =
                   (std::sin(p * R) - p * R * std::cos(p * R)) / p;
               return pi_subtracted(p, form) *
                      std::exp(-sigma * sigma * p * p) * window;
             },
             0.0, p_max, 1e-9, 1e-13);
}

double neutrality_scale(double R, double sigma, PhotonMassForm form) {
  if (!(R > 0.0) || !(sigma > 0.0))
    throw ValidationError("neutrality_scale: need R > 0 and sigma > 0");
  const double p_max = 9.7 / sigma;
  return 2.0 / kPi *
         quad::adaptive_gk(
             [=](double p) {
               if (p == 0.0)
                 return 0.0;
               const double window =
                   std::fabs(std::sin(p * R) - p * R * std::cos(p * R)) / p;
               return std::fabs(pi_subtracted(p, form)) *
                      std::exp(-sigma * sigma * p * p) * window;
             },
             0.0, p_max, 1e-6, 1e-10);
}

} // namespace vacpol::uehling
