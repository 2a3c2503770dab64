#pragma once
#include <string>
#include <vector>

#include "vacpol/extrapolate.hpp"

//! Dilatation flow of the long-range density coefficient: starting from
//! w5(1), each spectral interval (lambda_{n+1}, lambda_n] rescales the
//! decrease of w5 across (x_{n+1}, x_n], x_n = 1/n, by the ratio
//! (lambda_n - lambda_{n+1}) / (gamma/(n(n+1))). The density beyond x = 1
//! is nu5 / (8 pi x^7).

namespace vacpol::flow {

//! level momenta p_n, 1-indexed, strictly decreasing
struct SpectrumTable {
  std::vector<double> p;
  void validate() const;
  std::size_t levels() const { return p.size(); }
};

//! load a CSV with columns n,p_n (header optional)
SpectrumTable load_spectrum_csv(const std::string &path);

//! hydrogen-like spectrum p_n = gamma/n
SpectrumTable coulomb_spectrum(double gamma, int levels);

struct FlowPoint {
  double omega = 0;  //! spectral parameter inside the interval
  double x = 0;      //! flow position
  double nu5 = 0;
};

struct FlowResult {
  std::vector<FlowPoint> trajectory;
  double nu5_initial = 0;  //! w5(1)
  double nu5_final = 0;    //! after n_intervals
  int n_intervals = 0;
};

//! integrate the flow across the first n_intervals spectral intervals;
//! requires n_intervals + 1 <= spectrum.levels()
FlowResult integrate_flow(const fitw5::PiecewiseW5 &w5,
                          const SpectrumTable &spectrum, double gamma,
                          int n_intervals, int points_per_interval = 16);

//! tail of the flow beyond level n_cut, per unit charge:
//! (w5(1/(n_cut+1)) - w5(0+)) / Z
double remainder_estimate(const fitw5::PiecewiseW5 &w5, int Z, int n_cut = 7);

//! long-range density nu(r) = nu5 / (8 pi r^7) for r >= 1
double density(double nu5, double r);

//! exact one-electron density at one Compton length, for comparison in
//! reports; not a regression target
inline constexpr double kOneElectronDensityReference = 1.3e-3;

} // namespace vacpol::flow
