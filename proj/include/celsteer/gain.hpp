#ifndef CELSTEER_GAIN_HPP_
#define CELSTEER_GAIN_HPP_

#include <complex>
#include <string>
#include <vector>

#include "celsteer/params.hpp"

namespace celsteer {

// Closed-form gain-medium coefficients of the two-mode laser:
//   xi11 = (3A/8)  O^2 g^2 / [(O^2+g^2)(O^2/4+g^2)]
//   xi22 = (A/2)   g^2     / (O^2+g^2)
//   xi12 = -(A/2)  O g     / (O^2+g^2)
//   xi21 = (A/8)   O g (O^2-2g^2) / [(O^2+g^2)(O^2/4+g^2)]
XiCoefficients compute_xi(const GainMediumParams& gain);

// Bose-Einstein mean occupation n = 1/(exp(hbar w / kB T) - 1).
// Overflow-safe: returns 0 for hbar w / kB T > 700.
double thermal_occupation(double omega_m, double temperature_k);

// Inverse of thermal_occupation at fixed omega.
double temperature_for(double n, double omega_m);

// Steady-state cavity amplitude <c_j> = eps / (kappa + i delta' + xi_jj_signed)
// where xi_jj_signed is (-1)^j Xi_jj: -xi11 for cavity 1, +xi22 for cavity 2.
std::complex<double> cavity_steady_amplitude(double epsilon, double kappa,
                                             double delta_prime, double xi_jj_signed);

// Effective many-photon coupling G_j >= 0 for cavity/mirror pair j (1 or 2).
// Direct ratio wins over the physical drive path when both are present.
double effective_coupling(const CavityParams& cavity, const MechanicalParams& mirror,
                          const XiCoefficients& xi, int index,
                          std::vector<std::string>* warnings = nullptr);

// Single-photon optomechanical coupling g = (nu/l) sqrt(hbar / (mu omega_m)).
double single_photon_coupling(const DriveSpec& drive, double omega_m);

}  // namespace celsteer

#endif
