#include "vacpol/laplace_basis.hpp"

#include <cmath>

#include "vacpol/errors.hpp"
#include "vacpol/quadrature.hpp"
#include "vacpol/specfun.hpp"

namespace vacpol::laplace {

void Window::validate() const {
  if (!(0.0 < a) || !(a < b))
    throw ValidationError("window: need 0 < a < b");
}

namespace {

//! int_a^b x e^{-px} dx expanded for small |p| (the closed form loses
//! digits to cancellation there)
cd linear_series(cd p, Window w) {
  cd term(1.0), sum(0.0);
  for (int k = 0; k < 24; ++k) {
    const double moment =
        (std::pow(w.b, k + 2) - std::pow(w.a, k + 2)) / (k + 2);
    const cd add = term * moment;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum))
      break;
    term *= -p / double(k + 1);
  }
  return sum;
}

cd osc_series(cd d, Window w) {
  cd term(1.0), sum(0.0);
  for (int k = 0; k < 24; ++k) {
    const double moment =
        (std::pow(w.b, k + 1) - std::pow(w.a, k + 1)) / (k + 1);
    const cd add = term * moment;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum))
      break;
    term *= -d / double(k + 1);
  }
  return sum;
}

} // namespace

cd transform_linear(cd p, Window w) {
  w.validate();
  if (std::abs(p) * w.b < 1e-2)
    return linear_series(p, w);
  const cd ea = std::exp(-p * w.a), eb = std::exp(-p * w.b);
  return (w.a * ea - w.b * eb) / p + (ea - eb) / (p * p);
}

cd transform_inv_power(int m, cd p, Window w) {
  w.validate();
  if (m < 0)
    throw ValidationError("transform_inv_power: need m >= 0");
  if (p == cd(0.0)) {
    if (m == 0)
      return std::log(w.b / w.a);
    return (std::pow(w.a, -m) - std::pow(w.b, -m)) / m;
  }
  if (p.imag() == 0.0 && p.real() > 0.0) {
    const double pr = p.real();
    return std::pow(w.a, -m) * specfun::expint_en(m + 1, w.a * pr) -
           std::pow(w.b, -m) * specfun::expint_en(m + 1, w.b * pr);
  }
  return quad::adaptive_gk_complex(
      [m, p](double x) { return std::exp(-p * x) / std::pow(x, m + 1); },
      w.a, w.b, 1e-12);
}

cd transform_osc(double omega, cd p, Window w) {
  w.validate();
  const cd d = p - cd(0.0, omega);
  if (std::abs(d) * w.b < 1e-2)
    return osc_series(d, w);
  return (std::exp(-d * w.a) - std::exp(-d * w.b)) / d;
}

cd transform_cos(double omega, cd p, Window w) {
  return 0.5 * (transform_osc(omega, p, w) + transform_osc(-omega, p, w));
}

cd transform_sin(double omega, cd p, Window w) {
  return (transform_osc(omega, p, w) - transform_osc(-omega, p, w)) /
         cd(0.0, 2.0);
}

cd laplace_transform(const std::vector<double> &grid,
                     const std::vector<double> &values, cd p,
                     double coarse_tol) {
  if (grid.size() != values.size() || grid.size() < 5)
    throw ValidationError("laplace_transform: need >= 5 aligned samples");
  if (!(grid.front() > 0.0))
    throw ValidationError("laplace_transform: grid must start above 0");

  const auto weight = [p](double x) { return std::exp(-p * x); };
  const cd full = quad::simpson_uniform_weighted(grid, values, weight);

  // coarse/fine comparison on the largest odd prefix so the strided
  // subgrid stays uniform end to end
  const std::size_t m = grid.size() % 2 == 1 ? grid.size() : grid.size() - 1;
  const std::vector<double> px(grid.begin(), grid.begin() + m);
  const std::vector<double> py(values.begin(), values.begin() + m);
  const cd fine = quad::simpson_uniform_weighted(px, py, weight);
  std::vector<double> gx, gy;
  for (std::size_t i = 0; i < m; i += 2) {
    gx.push_back(grid[i]);
    gy.push_back(values[i]);
  }
  const cd half = quad::simpson_uniform_weighted(gx, gy, weight);

  double scale = std::abs(full);
  for (std::size_t i = 0; i < grid.size(); ++i)
    scale = std::max(scale,
                     std::fabs(values[i]) * std::exp(-p.real() * grid[i]) *
                         (grid.back() - grid.front()));
  if (std::abs(fine - half) > coarse_tol * scale)
    throw NumericalError("laplace_transform: sample grid too coarse at this p");
  return full;
}

} // namespace vacpol::laplace
