#ifndef CELSTEER_CONFIG_HPP_
#define CELSTEER_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "celsteer/params.hpp"
#include "celsteer/pipeline.hpp"

namespace celsteer {

struct OracleSettings {
    std::optional<double> dt;  // auto from stiffness when absent
    long n_steps = 200000;
    int n_trajectories = 200;
    double burn_in_fraction = 0.5;
    std::uint64_t seed = 1;
};

struct LoadedConfig {
    SystemParams params;
    SweepSpec sweep;            // defaults to the Omega/gamma line when absent
    bool sweep_given = false;
    OracleSettings oracle;
    std::vector<std::string> warnings;
};

// Section-4 defaults: kappa = 2pi x 215 kHz, gamma_m = 2pi x 140 Hz,
// omega_m = 2pi x 947 kHz, A = 250 MHz, gamma = 1.7 MHz (both entered
// without the 2pi flag), G/omega_m = 0.25, (n1, n2) = (15, 5), Omega = 6 gamma.
SystemParams default_params();

// Default 1-D sweep: omega_over_gamma in [0, 12], 481 points.
SweepSpec default_sweep();

// Default stability-map axes: g2_over_wm in [0, 0.35] x 71 by
// omega_over_gamma in [0, 12] x 121.
SweepSpec default_stability_axes();

// Parses a config document; missing sections fall back to the defaults above.
// Schema violations name the offending key.
LoadedConfig load_config(const std::string& path);
LoadedConfig load_config_from_string(const std::string& json_text);

}  // namespace celsteer

#endif
