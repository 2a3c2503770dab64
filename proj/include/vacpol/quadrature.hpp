#pragma once
#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace vacpol::quad {

//! 16-point Gauss-Legendre nodes/weights on [-1,1], positive half
//! (nodes symmetric, weights repeated).
extern const std::array<double, 8> kGL16Nodes;
extern const std::array<double, 8> kGL16Weights;

//! single 16-point Gauss-Legendre panel on [a,b]
template <typename F> auto gl16(F f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto acc = decltype(f(mid))(0);
  for (std::size_t i = 0; i < 8; ++i) {
    const double dx = half * kGL16Nodes[i];
    acc += kGL16Weights[i] * (f(mid - dx) + f(mid + dx));
  }
  return acc * half;
}

//! composite 16-point Gauss-Legendre with n equal panels
template <typename F> auto composite_gl16(F f, double a, double b, int n) {
  const double w = (b - a) / n;
  auto acc = decltype(f(a))(0);
  for (int k = 0; k < n; ++k)
    acc += gl16(f, a + k * w, a + (k + 1) * w);
  return acc;
}

//! adaptive Gauss(7)/Kronrod(15); throws vacpol::NumericalError when the
//! tolerance cannot be reached within the subdivision budget
double adaptive_gk(const std::function<double(double)> &f, double a, double b,
                   double rel_tol = 1e-12, double abs_tol = 0.0);

std::complex<double>
adaptive_gk_complex(const std::function<std::complex<double>(double)> &f,
                    double a, double b, double rel_tol = 1e-12,
                    double abs_tol = 0.0);

//! composite Simpson on a uniform grid (odd count preferred; an even count
//! finishes with a 3/8 block). Values may be real or complex.
double simpson_uniform(const std::vector<double> &x,
                       const std::vector<double> &y);

//! Simpson with the integrand weighted pointwise: int f(x_i)*w(x_i) dx
std::complex<double>
simpson_uniform_weighted(const std::vector<double> &x,
                         const std::vector<double> &y,
                         const std::function<std::complex<double>(double)> &w);

} // namespace vacpol::quad
