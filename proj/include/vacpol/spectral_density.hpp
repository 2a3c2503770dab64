#pragma once
#include <string>
#include <vector>

//! Regularized spectral density of the Dirac-Coulomb problem: for each
//! angular channel kappa the continuum momentum integral over [lambda_ir,
//! lambda0] of |F|^2 + |G|^2 on both energy branches, minus the bound-state
//! sum, combined as
//!   y(x) = sum_{0<|kappa|<=K} 2|kappa| ( y_minus - y_plus - y_bound )
//! The radial trace relates to y by (1/2) Tr R(x) = y(x) / (8 pi x^2).

namespace vacpol::spectral {

inline constexpr const char *kTraceRelation = "0.5*TrR(x) = y(x)/(8*pi*x^2)";

struct PhysicalParams {
  int Z = 92;
  double alpha = 0.0072973525693;
  double lambda_ir = 0;   //! infrared momentum cutoff
  double lambda0 = 7.58;  //! ultraviolet momentum cutoff
  int K = 8;              //! largest |kappa|
  int M_lambda = 5;       //! largest principal number kept in the bound sum
  double a_bound = 0;     //! smallest admissible x; 0 = 2/lambda0
  double b_bound = 0;     //! largest admissible x; 0 = K/(2*gamma*sqrt(lambda0))
  double gamma() const { return Z * alpha; }
  double a_eff() const;
  double b_eff() const;
  void validate() const;  //! throws vacpol::ValidationError
};

//! one channel's contributions on the sample grid
struct ChannelDensity {
  int kappa = 0;
  std::vector<double> y_minus;
  std::vector<double> y_plus;
  std::vector<double> y_bound;
};

struct SampledDensity {
  std::vector<double> x;  //! uniform grid on [a,b]
  std::vector<double> y;
  PhysicalParams params;
  std::vector<ChannelDensity> channels;  //! kept when requested
  double a() const { return x.front(); }
  double b() const { return x.back(); }
};

struct QuadratureSpec {
  int points_per_panel = 16;   //! fixed Gauss-Legendre order
  double max_panel_width = 0;  //! 0 = auto pi/(2b)
  int panels(double lambda_ir, double lambda0, double b) const;
};

//! continuum integrals and bound sum for one signed kappa.
//! Grid points outside [a_eff, b_eff] are refused (ValidationError).
ChannelDensity channel_density(const PhysicalParams &params, int kappa,
                               const std::vector<double> &grid,
                               const QuadratureSpec &spec = {});

//! assembled density over all channels |kappa| <= K; channel work is
//! parallelized, the reduction runs in fixed channel order
SampledDensity assemble_density(const PhysicalParams &params,
                                const std::vector<double> &grid,
                                const QuadratureSpec &spec = {},
                                int threads = 0, bool keep_channels = false);

//! uniform sample grid on [a,b]
std::vector<double> uniform_grid(double a, double b, int n);

} // namespace vacpol::spectral
