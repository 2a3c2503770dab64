#pragma once
#include <complex>
#include <vector>

//! Restricted Laplace transforms on a window [a,b]:
//!   f(x) -> f^(p) = int_a^b f(x) e^{-px} dx
//! Closed forms for the decomposition basis and composite quadrature for
//! sampled data. All transforms accept complex p (the spike search runs on
//! the imaginary axis).

namespace vacpol::laplace {

using cd = std::complex<double>;

struct Window {
  double a = 0;
  double b = 0;
  void validate() const;  //! requires 0 < a < b
};

//! transform of f(x) = x
cd transform_linear(cd p, Window w);

//! transform of f(x) = 1/x^{m+1}; real p uses a^{-m}E_{m+1}(ap) - b^{-m}E_{m+1}(bp)
cd transform_inv_power(int m, cd p, Window w);

//! transform of f(x) = e^{i omega x}
cd transform_osc(double omega, cd p, Window w);

//! transforms of cos(omega x) and sin(omega x)
cd transform_cos(double omega, cd p, Window w);
cd transform_sin(double omega, cd p, Window w);

//! transform of sampled values on a uniform grid (composite Simpson).
//! Throws vacpol::ValidationError for non-uniform grids and
//! vacpol::NumericalError when the embedded coarse/fine comparison signals
//! the grid is too coarse at this p.
cd laplace_transform(const std::vector<double> &grid,
                     const std::vector<double> &values, cd p,
                     double coarse_tol = 1e-4);

} // namespace vacpol::laplace
