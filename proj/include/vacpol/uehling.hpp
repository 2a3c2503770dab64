#pragma once
#include <complex>

//! One-loop vacuum polarization: the running function pi(p) with an
//! ultraviolet cutoff lambda0, the induced screening profile u(x) in
//! position space, and its restricted Laplace transform on [a,b].
//! Units: electron mass = 1.

namespace vacpol::uehling {

enum class PhotonMassForm {
  kStandard,     //! M_x^2 = p^2 x(1-x) + 1
  kPaperLiteral  //! M_x^2 = p^2 (1-x) + 1
};

//! pi(p) = log(lambda0^2)/(12 pi^2) - 1/(36 pi^2)
//!         - 1/(2 pi^2) int_0^1 dx x(1-x) log(M_x^2)
double pi_running(double p, double lambda0,
                  PhotonMassForm form = PhotonMassForm::kStandard);

//! pi(p) - pi(0); the cutoff cancels
double pi_subtracted(double p,
                     PhotonMassForm form = PhotonMassForm::kStandard);

//! u(x) = -(16 gamma / 3 pi) x int_1^inf dz sqrt(z^2-1) (1 + 1/(2z)) e^{-2zx}
double u_position(double x, double gamma);

//! restricted Laplace transform int_a^b u(x) e^{-px} dx, computed as the
//! z-integral with the z-derivative applied analytically
std::complex<double> u_laplace(std::complex<double> p, double a, double b,
                               double gamma);

//! induced charge inside radius R with the p -> 0 subtraction and a Gaussian
//! momentum regulator of width 1/sigma; approaches 0 for R >> 1
double neutrality_charge(double R, double sigma,
                         PhotonMassForm form = PhotonMassForm::kStandard);

//! the same integral with all cancellations removed (absolute integrand);
//! yardstick for how small neutrality_charge is
double neutrality_scale(double R, double sigma,
                        PhotonMassForm form = PhotonMassForm::kStandard);

} // namespace vacpol::uehling
