#include "celsteer/gain.hpp"

#include <cmath>

#include "celsteer/constants.hpp"
#include "celsteer/errors.hpp"

namespace celsteer {

XiCoefficients compute_xi(const GainMediumParams& gain) {
    const double A = gain.linear_gain_A;
    const double g = gain.atomic_decay_gamma;
    const double O = gain.drive_strength_Omega;
    if (!std::isfinite(A) || !std::isfinite(g) || !std::isfinite(O))
        throw std::invalid_argument("compute_xi: non-finite input");
    if (g == 0.0)
        throw std::invalid_argument("compute_xi: atomic decay gamma must be nonzero");

    const double O2 = O * O;
    const double g2 = g * g;
    const double d1 = O2 + g2;            // O^2 + g^2
    const double d2 = 0.25 * O2 + g2;     // O^2/4 + g^2

    XiCoefficients xi;
    xi.xi11 = 0.375 * A * O2 * g2 / (d1 * d2);
    xi.xi22 = 0.5 * A * g2 / d1;
    xi.xi12 = -0.5 * A * O * g / d1;
    xi.xi21 = 0.125 * A * O * g * (O2 - 2.0 * g2) / (d1 * d2);
    return xi;
}

double thermal_occupation(double omega_m, double temperature_k) {
    if (!(omega_m > 0.0) || !std::isfinite(omega_m))
        throw std::invalid_argument("thermal_occupation: omega_m must be > 0");
    if (!(temperature_k > 0.0) || !std::isfinite(temperature_k))
        throw std::invalid_argument("thermal_occupation: temperature must be > 0");
    const double x = k_hbar * omega_m / (k_boltzmann * temperature_k);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double temperature_for(double n, double omega_m) {
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("temperature_for: n must be > 0");
    if (!(omega_m > 0.0) || !std::isfinite(omega_m))
        throw std::invalid_argument("temperature_for: omega_m must be > 0");
    return k_hbar * omega_m / (k_boltzmann * std::log1p(1.0 / n));
}

std::complex<double> cavity_steady_amplitude(double epsilon, double kappa,
                                             double delta_prime, double xi_jj_signed) {
    const std::complex<double> denom(kappa + xi_jj_signed, delta_prime);
    if (std::abs(denom) < 1e-12 * std::abs(epsilon))
        throw NumericalError("cavity_steady_amplitude: near-singular denominator (gain ~ loss at zero detuning)");
    if (std::abs(denom) == 0.0)
        throw NumericalError("cavity_steady_amplitude: zero denominator");
    return epsilon / denom;
}

double single_photon_coupling(const DriveSpec& drive, double omega_m) {
    return (drive.cavity_frequency_nu / drive.cavity_length_l) *
           std::sqrt(k_hbar / (drive.mirror_mass_mu * omega_m));
}

double effective_coupling(const CavityParams& cavity, const MechanicalParams& mirror,
                          const XiCoefficients& xi, int index,
                          std::vector<std::string>* warnings) {
    if (index != 1 && index != 2)
        throw std::invalid_argument("effective_coupling: index must be 1 or 2");
    if (cavity.g_over_wm) {
        if (cavity.drive && warnings)
            warnings->push_back("cavity_" + std::to_string(index) +
                                ": both g_over_wm and drive given; direct ratio wins");
        return *cavity.g_over_wm * mirror.omega_m;
    }
    if (!cavity.drive)
        throw ConfigError("cavity_" + std::to_string(index) +
                          ": neither g_over_wm nor drive spec present");
    const DriveSpec& d = *cavity.drive;
    d.validate("cavity_" + std::to_string(index) + ".drive");
    const double epsilon =
        std::sqrt(2.0 * cavity.kappa * d.power / (k_hbar * d.drive_frequency_omega_L));
    const double xi_signed = (index == 1) ? -xi.xi11 : +xi.xi22;
    // Anti-Stokes operating point: delta' = +omega_m.
    const auto amp = cavity_steady_amplitude(epsilon, cavity.kappa, mirror.omega_m, xi_signed);
    return single_photon_coupling(d, mirror.omega_m) * std::abs(amp);
}

}  // namespace celsteer
