#include "celsteer/params.hpp"

#include <cmath>

#include "celsteer/errors.hpp"
#include "celsteer/gain.hpp"

namespace celsteer {

namespace {
void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}
bool finite(double v) { return std::isfinite(v); }
}  // namespace

void GainMediumParams::validate() const {
    require(finite(linear_gain_A) && linear_gain_A >= 0.0,
            "gain.linear_gain_A: must be finite and >= 0");
    require(finite(atomic_decay_gamma) && atomic_decay_gamma > 0.0,
            "gain.atomic_decay_gamma: must be finite and > 0");
    require(finite(drive_strength_Omega) && drive_strength_Omega >= 0.0,
            "gain.drive_strength_Omega: must be finite and >= 0");
}

void DriveSpec::validate(const std::string& key) const {
    require(finite(power) && power > 0.0, key + ".power: must be > 0");
    require(finite(drive_frequency_omega_L) && drive_frequency_omega_L > 0.0,
            key + ".drive_frequency_omega_L: must be > 0");
    require(finite(cavity_frequency_nu) && cavity_frequency_nu > 0.0,
            key + ".cavity_frequency_nu: must be > 0");
    require(finite(cavity_length_l) && cavity_length_l > 0.0,
            key + ".cavity_length_l: must be > 0");
    require(finite(mirror_mass_mu) && mirror_mass_mu > 0.0,
            key + ".mirror_mass_mu: must be > 0");
}

void CavityParams::validate(const std::string& key) const {
    require(finite(kappa) && kappa > 0.0, key + ".kappa: must be finite and > 0");
    if (g_over_wm)
        require(finite(*g_over_wm) && *g_over_wm >= 0.0, key + ".g_over_wm: must be >= 0");
    if (drive) drive->validate(key + ".drive");
    require(g_over_wm.has_value() || drive.has_value(),
            key + ": give g_over_wm or a drive spec");
}

void MechanicalParams::validate(const std::string& key,
                                std::vector<std::string>* warnings) const {
    require(finite(omega_m) && omega_m > 0.0, key + ".omega_m: must be finite and > 0");
    require(finite(gamma_m) && gamma_m > 0.0, key + ".gamma_m: must be finite and > 0");
    require(n_th.has_value() != temperature_k.has_value(),
            key + ": n_th and temperature are mutually exclusive; give exactly one");
    if (n_th) require(finite(*n_th) && *n_th >= 0.0, key + ".n_th: must be >= 0");
    if (temperature_k)
        require(finite(*temperature_k) && *temperature_k > 0.0,
                key + ".temperature: must be > 0");
    // Markov approximation needs a large mechanical quality factor.
    if (warnings && omega_m / gamma_m <= 100.0)
        warnings->push_back(key + ": quality factor omega_m/gamma_m = " +
                            std::to_string(omega_m / gamma_m) +
                            " <= 100; Markovian bath treatment is questionable");
}

double MechanicalParams::bath_occupation() const {
    if (n_th) return *n_th;
    return thermal_occupation(omega_m, *temperature_k);
}

void SystemParams::validate(std::vector<std::string>* warnings) const {
    gain.validate();
    cavity_1.validate("cavity_1");
    cavity_2.validate("cavity_2");
    mirror_1.validate("mirror_1", warnings);
    mirror_2.validate("mirror_2", warnings);
}

}  // namespace celsteer
