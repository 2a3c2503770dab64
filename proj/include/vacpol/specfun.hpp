#pragma once
#include <complex>

//! Special functions needed by the radial Dirac solutions and the Laplace
//! basis: complex gamma, confluent hypergeometric 1F1, and the generalized
//! exponential integral E_n.

namespace vacpol::specfun {

using cd = std::complex<double>;

//! log Gamma(z), principal branch. Throws std::domain_error at poles.
cd log_gamma(cd z);

//! Gamma(z) for complex z. Throws std::domain_error at poles.
cd gamma(cd z);

//! Kummer's function M(a,b,z) = 1F1(a;b;z).
//! Exact finite sum when a is a non-positive integer; compensated power
//! series up to the switch radius; large-|z| expansion beyond.
//! Throws vacpol::NumericalError when no branch reaches its tolerance,
//! std::domain_error when b is a non-positive integer.
cd hyp1f1(cd a, cd b, cd z);

//! Generalized exponential integral E_n(x) = int_1^inf e^{-x t} t^{-n} dt.
//! x = 0 allowed for n >= 2 (value 1/(n-1)); throws std::domain_error
//! otherwise for x <= 0.
double expint_en(int n, double x);

} // namespace vacpol::specfun
