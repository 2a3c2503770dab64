#pragma once
#include <vector>

//! Closed-form solutions of the radial Dirac-Coulomb system in units of the
//! electron mass, with coupling gamma = Z*alpha and dimensionless radius x:
//!   -G' + (kappa/x) G = (z - 1 + gamma/x) F
//!    F' + (kappa/x) F = (z + 1 + gamma/x) G
//! z is the energy in mass units; bound states have |z| < 1 and momentum
//! p = sqrt(1-z^2), continuum states carry real momentum p with
//! z = ±sqrt(1+p^2).

namespace vacpol::dirac {

//! quantum numbers and derived constants of one bound level
struct BoundState {
  int kappa = 0;
  int n = 0;       //! radial excitation; principal number is |kappa| + n
  double s = 0;    //! sqrt(kappa^2 - gamma^2)
  double z = 0;    //! energy in mass units
  double p = 0;    //! sqrt(1 - z^2)
};

//! one continuum scattering state; sign picks the z = ±sqrt(1+p^2) branch
struct ContinuumState {
  int kappa = 0;
  double p = 0;
  int sign = +1;
  double s = 0;
  double z = 0;
  double y = 0;    //! gamma * z / p
};

//! radial functions sampled on a common grid
struct RadialSolution {
  std::vector<double> x;
  std::vector<double> F;
  std::vector<double> G;
};

//! admissible quantum numbers: kappa > 0 requires n >= 1, kappa < 0 admits
//! n >= 0; kappa = 0 never occurs
bool admissible(int kappa, int n);

//! energy and momentum of a bound level. Throws vacpol::ValidationError for
//! inadmissible (kappa, n) or gamma outside (0, |kappa|).
BoundState bound_energy(double gamma, int kappa, int n);

//! unit-normalized bound radial functions on the given grid
RadialSolution bound_solution(double gamma, int kappa, int n,
                              const std::vector<double> &grid);

ContinuumState continuum_state(double gamma, int kappa, double p, int sign);

//! delta-normalized continuum radial functions on the given grid
RadialSolution continuum_solution(double gamma, int kappa, double p, int sign,
                                  const std::vector<double> &grid);

//! max over interior grid points of |r1| + |r2| where r1, r2 are the two
//! equation residuals with derivatives taken by central differences
//! (three-point formula, correct on non-uniform grids)
double ode_residual(const RadialSolution &sol, double z, double gamma,
                    int kappa);

//! grid with geometric spacing near the origin (resolves the x^s cusp)
//! switching to uniform spacing h once the geometric step reaches h
std::vector<double> make_grid(double x_min, double x_max, double ratio,
                              double h);

} // namespace vacpol::dirac
