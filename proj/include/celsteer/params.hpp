#ifndef CELSTEER_PARAMS_HPP_
#define CELSTEER_PARAMS_HPP_

#include <optional>
#include <string>
#include <vector>

namespace celsteer {

// All rates below are angular rates in rad/s; conversion from configured
// {value, unit, times_two_pi} triples happens in config.cpp.

struct GainMediumParams {
    double linear_gain_A = 0.0;        // A = 2 r0 varsigma^2 / gamma^2
    double atomic_decay_gamma = 0.0;
    double drive_strength_Omega = 0.0;
    // Microscopic provenance; only used to derive A when A is not given.
    std::optional<double> injection_rate_r0;
    std::optional<double> atom_field_coupling;

    void validate() const;
};

// The four gain-medium rates of the two-mode laser master equation.
struct XiCoefficients {
    double xi11 = 0.0;  // gain, first laser mode
    double xi22 = 0.0;  // loss, second laser mode
    double xi12 = 0.0;
    double xi21 = 0.0;
};

struct DriveSpec {
    double power = 0.0;                    // W
    double drive_frequency_omega_L = 0.0;  // rad/s
    double cavity_frequency_nu = 0.0;      // rad/s
    double cavity_length_l = 0.0;          // m
    double mirror_mass_mu = 0.0;           // kg

    void validate(const std::string& key) const;
};

struct CavityParams {
    double kappa = 0.0;                  // rad/s
    std::optional<double> g_over_wm;     // direct coupling ratio G/omega_m
    std::optional<DriveSpec> drive;      // physical path for G

    void validate(const std::string& key) const;
};

struct MechanicalParams {
    double omega_m = 0.0;   // rad/s
    double gamma_m = 0.0;   // rad/s
    std::optional<double> n_th;           // mean thermal phonons
    std::optional<double> temperature_k;  // K

    void validate(const std::string& key, std::vector<std::string>* warnings) const;
    // Resolves the bath spec to a mean occupation.
    double bath_occupation() const;
};

// Anti-Stokes operating point is implicit throughout: the effective detuning
// of cavity j is +omega_mj. There is no detuning field; it is a model constant.
struct SystemParams {
    GainMediumParams gain;
    CavityParams cavity_1, cavity_2;
    MechanicalParams mirror_1, mirror_2;

    void validate(std::vector<std::string>* warnings = nullptr) const;
};

}  // namespace celsteer

#endif
