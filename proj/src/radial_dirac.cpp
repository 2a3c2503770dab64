#include "vacpol/radial_dirac.hpp"

#include <cmath>
#include <complex>

#include "vacpol/errors.hpp"
#include "vacpol/specfun.hpp"

namespace vacpol::dirac {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.141592653589793238462643383279502884;

void check_coupling(double gamma, int kappa) {
  if (kappa == 0)
    throw ValidationError("radial: kappa must be a nonzero integer");
  if (!(gamma > 0.0) || gamma >= std::abs(kappa))
    throw ValidationError("radial: coupling must satisfy 0 < gamma < |kappa|");
}

void check_grid(const std::vector<double> &grid) {
  if (grid.empty())
    throw ValidationError("radial: empty grid");
  double prev = 0.0;
  for (double x : grid) {
    if (!(x > prev))
      throw ValidationError("radial: grid must be positive and increasing");
    prev = x;
  }
}

} // namespace

bool admissible(int kappa, int n) {
  if (kappa == 0)
    return false;
  return kappa < 0 ? n >= 0 : n >= 1;
}

BoundState bound_energy(double gamma, int kappa, int n) {
  check_coupling(gamma, kappa);
  if (!admissible(kappa, n))
    throw ValidationError("radial: inadmissible (kappa, n) pair");
  BoundState st;
  st.kappa = kappa;
  st.n = n;
  st.s = std::sqrt(double(kappa) * kappa - gamma * gamma);
  const double ns = n + st.s;
  st.z = 1.0 / std::sqrt(1.0 + gamma * gamma / (ns * ns));
  st.p = gamma / std::sqrt(ns * ns + gamma * gamma);
  return st;
}

RadialSolution bound_solution(double gamma, int kappa, int n,
                              const std::vector<double> &grid) {
  check_grid(grid);
  const BoundState st = bound_energy(gamma, kappa, n);
  const double s = st.s, z = st.z, p = st.p;
  const double ns_over_z = std::sqrt((n + s) * (n + s) + gamma * gamma);
  const double A = ns_over_z - kappa;

  const double log_u1 =
      -std::lgamma(2.0 * s + 1.0) +
      0.5 * (std::lgamma(2.0 * s + n + 1.0) -
             std::log(2.0 * ns_over_z * A) - std::lgamma(double(n) + 1.0));
  const double u1 = std::exp(log_u1);

  const double fpref = std::sqrt(1.0 + z) * u1 * std::sqrt(p);
  const double gpref = -std::sqrt(1.0 - z) * u1 * std::sqrt(p);

  RadialSolution sol;
  sol.x = grid;
  sol.F.resize(grid.size());
  sol.G.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double arg = 2.0 * p * x;
    const double m1 =
        specfun::hyp1f1(cd(-n), cd(2.0 * s + 1.0), cd(arg)).real();
    const double m2 =
        (n == 0) ? 0.0
                 : specfun::hyp1f1(cd(1 - n), cd(2.0 * s + 1.0), cd(arg))
                           .real() * n;
    const double common = std::pow(arg, s) * std::exp(-p * x);
    sol.F[i] = fpref * common * (A * m1 - m2);
    sol.G[i] = gpref * common * (A * m1 + m2);
  }
  return sol;
}

ContinuumState continuum_state(double gamma, int kappa, double p, int sign) {
  check_coupling(gamma, kappa);
  if (!(p > 0.0))
    throw ValidationError("radial: continuum momentum must be positive");
  if (sign != 1 && sign != -1)
    throw ValidationError("radial: branch sign must be +1 or -1");
  ContinuumState st;
  st.kappa = kappa;
  st.p = p;
  st.sign = sign;
  st.s = std::sqrt(double(kappa) * kappa - gamma * gamma);
  st.z = sign * std::sqrt(1.0 + p * p);
  st.y = gamma * st.z / p;
  return st;
}

RadialSolution continuum_solution(double gamma, int kappa, double p, int sign,
                                  const std::vector<double> &grid) {
  check_grid(grid);
  const ContinuumState st = continuum_state(gamma, kappa, p, sign);
  const double s = st.s, z = st.z, y = st.y;

  // u2 = e^{pi y/2} |Gamma(s+iy)| / (sqrt(pi) Gamma(2s+1)), in log space
  const double log_u2 =
      0.5 * kPi * y + specfun::log_gamma(cd(s, y)).real() -
      0.5 * std::log(kPi) - std::lgamma(2.0 * s + 1.0);
  const double u2 = std::exp(log_u2);

  const cd root = std::sqrt(cd(-kappa, y / z) * cd(s, y));
  const cd a1f1(s + 1.0, y);
  const cd b1f1(2.0 * s + 1.0, 0.0);

  const double fpref = std::sqrt((z + 1.0) / z) * u2;
  const double gpref = -double(sign) * std::sqrt((z - 1.0) / z) * u2;

  RadialSolution sol;
  sol.x = grid;
  sol.F.resize(grid.size());
  sol.G.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const cd arg(0.0, 2.0 * p * x);
    const cd h = std::exp(-0.5 * arg) * root * specfun::hyp1f1(a1f1, b1f1, arg);
    const double common = std::pow(2.0 * p * x, s);
    sol.F[i] = fpref * common * h.real();
    sol.G[i] = gpref * common * h.imag();
  }
  return sol;
}

double ode_residual(const RadialSolution &sol, double z, double gamma,
                    int kappa) {
  const std::size_t n = sol.x.size();
  if (n < 3 || sol.F.size() != n || sol.G.size() != n)
    throw ValidationError("ode_residual: need >= 3 aligned samples");

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = sol.x[i] - sol.x[i - 1];
    const double hr = sol.x[i + 1] - sol.x[i];
    const double wl = -hr / (hl * (hl + hr));
    const double wc = (hr - hl) / (hl * hr);
    const double wr = hl / (hr * (hl + hr));
    const double dF = wl * sol.F[i - 1] + wc * sol.F[i] + wr * sol.F[i + 1];
    const double dG = wl * sol.G[i - 1] + wc * sol.G[i] + wr * sol.G[i + 1];
    const double x = sol.x[i];
    const double r1 =
        -dG + (kappa / x) * sol.G[i] - (z - 1.0 + gamma / x) * sol.F[i];
    const double r2 =
        dF + (kappa / x) * sol.F[i] - (z + 1.0 + gamma / x) * sol.G[i];
    worst = std::max(worst, std::fabs(r1) + std::fabs(r2));
  }
  return worst;
}

std::vector<double> make_grid(double x_min, double x_max, double ratio,
                              double h) {
  if (!(x_min > 0.0) || !(x_max > x_min) || !(ratio > 1.0) || !(h > 0.0))
    throw ValidationError("make_grid: need 0 < x_min < x_max, ratio > 1, h > 0");
  std::vector<double> grid;
  double x = x_min;
  double step = h;
  while (x < x_max) {
    grid.push_back(x);
    step = std::min(x * (ratio - 1.0), h);
    x += step;
  }
  // avoid a sliver interval at the end; it would amplify rounding in
  // finite differences taken on the grid
  if (grid.size() > 1 && x_max - grid.back() < 0.25 * step)
    grid.pop_back();
  grid.push_back(x_max);
  return grid;
}

} // namespace vacpol::dirac
