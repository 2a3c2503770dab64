#pragma once
#include <vector>

//! Removal of the ultraviolet cutoff: fit w5(lambda_ir, lambda0) samples to
//!   w5(lambda_ir, lambda0) = w5_inf(lambda_ir) + beta * lambda0^{-eta}
//! by gradient descent, and the piecewise power-law profile of the
//! cutoff-free w5 as a function of x = lambda_ir/gamma.

namespace vacpol::fitw5 {

struct W5Sample {
  double lambda_ir = 0;
  double lambda0 = 0;
  double w5 = 0;
};

struct ExtrapolateOptions {
  double learning_rate = 0.05;
  int max_iterations = 2000000;
  double grad_tol = 1e-10;
  double beta_init = 1.0;
  double eta_init = 2.0;
};

struct ExtrapolationResult {
  std::vector<double> lambda_ir;    //! distinct, ascending
  std::vector<double> w5_infinity;  //! one per lambda_ir
  double beta = 0;
  double eta = 0;
  double grad_norm = 0;
  int iterations = 0;
  bool flat_direction = false;  //! eta poorly identified (beta ~ 0 or
                                //! too few distinct lambda0)
};

//! least-squares extrapolation; throws vacpol::ValidationError unless every
//! lambda_ir group carries at least two distinct lambda0
ExtrapolationResult extrapolate(const std::vector<W5Sample> &samples,
                                const ExtrapolateOptions &opts = {});

//! continuity-chained piecewise power law on (0, 1]:
//!   w5(x) = upsilon x^{xi_1} + chi            on (0, t_1]
//!   w5(x) = w5(t_{i-1}) (x/t_{i-1})^{xi_i}     on (t_{i-1}, t_i]
struct PiecewiseW5 {
  double upsilon = 0;
  double chi = 0;
  std::vector<double> knots;  //! ascending, last = 1
  std::vector<double> xi;     //! one exponent per interval
  void validate() const;
};

//! locked profile used by the flow stage
PiecewiseW5 builtin_w5_profile();

//! evaluate w5(x); throws vacpol::ValidationError outside (0, 1]
double eval_w5(const PiecewiseW5 &fit, double x);

//! limit x -> 0+ (the additive floor chi)
double w5_at_zero(const PiecewiseW5 &fit);

//! fit a piecewise power law to samples (x_i, w_i) with the given knots;
//! log-log least squares per interval, continuity chained left to right;
//! the first interval fits (upsilon, chi, xi_1) with a line search over chi
PiecewiseW5 fit_piecewise(const std::vector<double> &x,
                          const std::vector<double> &w,
                          const std::vector<double> &knots);

} // namespace vacpol::fitw5
