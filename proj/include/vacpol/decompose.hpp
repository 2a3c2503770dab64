#pragma once
#include <complex>
#include <vector>

#include "vacpol/laplace_basis.hpp"
#include "vacpol/spectral_density.hpp"

//! Decomposition of a sampled density on [a,b] into
//!   y(x) = c1 x + u(x) + c2 delta + w1/x + s(x) + w5/x^5 + remainder
//! fitted by linear least squares in the Laplace domain; the oscillating
//! part s(x) = sum_k (A_k cos w_k x + B_k sin w_k x) is grown greedily from
//! spikes of the residual transform on the imaginary axis.

namespace vacpol::decomp {

using cd = std::complex<double>;
using laplace::Window;

struct Oscillation {
  double omega = 0;
  double c_cos = 0;  //! A in A cos(wx) + B sin(wx)
  double c_sin = 0;  //! B
};

struct Decomposition {
  double c1 = 0;   //! linear (cutoff artifact, discarded downstream)
  double c2 = 0;   //! delta at x=0 (charge renormalization)
  double w1 = 0;   //! 1/x coefficient (artifact, discarded downstream)
  double w5 = 0;   //! 1/x^5 coefficient: the physical output
  std::vector<Oscillation> modes;
  std::vector<double> remainder;  //! on the sample grid, delta excluded
  double remainder_norm = 0;
  double oscillation_norm = 0;
  int fit_iterations = 0;
  std::vector<double> lls_residual_history;  //! one entry per fit pass
};

struct DecomposeOptions {
  int max_frequencies = 12;
  double remainder_tol = 0.1;
  int n_real_p = 48;        //! real-axis sample count (includes p = 0)
  double p_max = 0;         //! 0 = auto 4/a
  double q_max = 0;         //! 0 = auto; capped at half-Nyquist
  double spike_floor = 1e-9;  //! relative spike detection floor
  int spike_halfwidth = 3;  //! neighborhood half width in grid steps
  double gamma = 0;         //! Uehling coupling; 0 disables the u term
};

//! imaginary-axis residual probe: locate the dominant interior spike of
//! |O^(iq)| and refine omega inside its neighborhood with the unit-norm
//! matched filter over (sin, cos) transforms. Throws vacpol::NumericalError
//! when no interior spike rises above the floor.
struct SpikeResult {
  double omega = 0;
  double c_cos = 0, c_sin = 0;  //! unit filter direction
  double strength = 0;
};
SpikeResult find_frequency(const std::vector<double> &q_grid,
                           const std::vector<cd> &residual, Window w,
                           const DecomposeOptions &opts);

//! full greedy decomposition; throws vacpol::NumericalError when the
//! remainder norm stays above remainder_tol after max_frequencies
Decomposition decompose(const spectral::SampledDensity &density,
                        const DecomposeOptions &opts);

//! weighted L2 norm of a remainder sampled on the grid:
//! ||O||^2 = 1/((b-a)^2 e4(0)^2) int_a^b O^2 dx
double remainder_norm(const std::vector<double> &grid,
                      const std::vector<double> &values, Window w);

//! norm of the oscillating part:
//! ||s||^2 = 1/e4(0)^2 sum_k |int_a^b (A_k cos + B_k sin) dx|^2
double oscillation_norm(const std::vector<Oscillation> &modes, Window w);

} // namespace vacpol::decomp
