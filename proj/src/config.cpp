#include "celsteer/config.hpp"

#include <fstream>
#include <iterator>
#include <json.hpp>
#include <set>

#include "celsteer/constants.hpp"
#include "celsteer/errors.hpp"
#include "celsteer/units.hpp"

namespace celsteer {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& section) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(section + ": unknown key '" + it.key() + "'");
}

Quantity parse_quantity(const json& j, const std::string& key) {
    if (!j.is_object())
        throw ConfigError(key + ": expected {\"value\", \"unit\", \"times_two_pi\"}");
    reject_unknown_keys(j, {"value", "unit", "times_two_pi"}, key);
    if (!j.contains("value") || !j["value"].is_number())
        throw ConfigError(key + ".value: number required");
    if (!j.contains("unit") || !j["unit"].is_string())
        throw ConfigError(key + ".unit: string required");
    Quantity q;
    q.value = j["value"].get<double>();
    q.unit = unit_from_string(j["unit"].get<std::string>());
    q.times_two_pi = j.value("times_two_pi", false);
    if (j.contains("times_two_pi") && !j["times_two_pi"].is_boolean())
        throw ConfigError(key + ".times_two_pi: boolean required");
    return q;
}

double angular(const json& j, const std::string& key) {
    return to_angular(parse_quantity(j, key), key);
}

double bare_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError(key + ": bare number required");
    return j.get<double>();
}

void parse_gain(const json& j, GainMediumParams& g, const std::string& sec,
                std::vector<std::string>* warnings) {
    reject_unknown_keys(j, {"linear_gain_A", "atomic_decay_gamma", "drive_strength_Omega",
                            "omega_over_gamma", "injection_rate_r0", "atom_field_coupling"},
                        sec);
    if (j.contains("atomic_decay_gamma"))
        g.atomic_decay_gamma = angular(j["atomic_decay_gamma"], sec + ".atomic_decay_gamma");
    if (j.contains("injection_rate_r0"))
        g.injection_rate_r0 = angular(j["injection_rate_r0"], sec + ".injection_rate_r0");
    if (j.contains("atom_field_coupling"))
        g.atom_field_coupling = angular(j["atom_field_coupling"], sec + ".atom_field_coupling");
    if (j.contains("linear_gain_A")) {
        g.linear_gain_A = angular(j["linear_gain_A"], sec + ".linear_gain_A");
        if (g.injection_rate_r0 && g.atom_field_coupling && warnings)
            warnings->push_back(sec + ": linear_gain_A given directly; microscopic "
                                      "(r0, coupling) pair kept as provenance only");
    } else if (g.injection_rate_r0 && g.atom_field_coupling) {
        const double vs = *g.atom_field_coupling;
        g.linear_gain_A = 2.0 * (*g.injection_rate_r0) * vs * vs /
                          (g.atomic_decay_gamma * g.atomic_decay_gamma);
    }
    if (j.contains("omega_over_gamma") && j.contains("drive_strength_Omega"))
        throw ConfigError(sec + ": omega_over_gamma and drive_strength_Omega are mutually "
                                "exclusive; give exactly one");
    if (j.contains("omega_over_gamma"))
        g.drive_strength_Omega =
            bare_number(j["omega_over_gamma"], sec + ".omega_over_gamma") * g.atomic_decay_gamma;
    else if (j.contains("drive_strength_Omega"))
        g.drive_strength_Omega = angular(j["drive_strength_Omega"], sec + ".drive_strength_Omega");
}

void parse_cavity(const json& j, CavityParams& c, const std::string& sec) {
    reject_unknown_keys(j, {"kappa", "g_over_wm", "drive"}, sec);
    if (j.contains("kappa")) c.kappa = angular(j["kappa"], sec + ".kappa");
    if (j.contains("g_over_wm"))
        c.g_over_wm = bare_number(j["g_over_wm"], sec + ".g_over_wm");
    if (j.contains("drive")) {
        const json& d = j["drive"];
        reject_unknown_keys(d, {"power", "drive_frequency_omega_L", "cavity_frequency_nu",
                                "cavity_length_l", "mirror_mass_mu"},
                            sec + ".drive");
        DriveSpec spec;
        spec.power = bare_number(d.at("power"), sec + ".drive.power");  // W
        spec.drive_frequency_omega_L =
            angular(d.at("drive_frequency_omega_L"), sec + ".drive.drive_frequency_omega_L");
        spec.cavity_frequency_nu =
            angular(d.at("cavity_frequency_nu"), sec + ".drive.cavity_frequency_nu");
        spec.cavity_length_l = bare_number(d.at("cavity_length_l"), sec + ".drive.cavity_length_l");
        spec.mirror_mass_mu = bare_number(d.at("mirror_mass_mu"), sec + ".drive.mirror_mass_mu");
        c.drive = spec;
        if (j.contains("g_over_wm")) {
            // Direct ratio wins; keep both so effective_coupling can warn.
        } else {
            c.g_over_wm.reset();
        }
    }
}

void parse_mirror(const json& j, MechanicalParams& m, const std::string& sec) {
    reject_unknown_keys(j, {"omega_m", "gamma_m", "n_th", "temperature"}, sec);
    if (j.contains("omega_m")) m.omega_m = angular(j["omega_m"], sec + ".omega_m");
    if (j.contains("gamma_m")) m.gamma_m = angular(j["gamma_m"], sec + ".gamma_m");
    if (j.contains("n_th") && j.contains("temperature"))
        throw ConfigError(sec + ": n_th and temperature are mutually exclusive");
    if (j.contains("n_th")) {
        m.n_th = bare_number(j["n_th"], sec + ".n_th");
        m.temperature_k.reset();
    }
    if (j.contains("temperature")) {
        m.temperature_k = to_kelvin(parse_quantity(j["temperature"], sec + ".temperature"),
                                    sec + ".temperature");
        m.n_th.reset();
    }
}

SweepAxis parse_axis(const json& j, const std::string& sec) {
    reject_unknown_keys(j, {"parameter", "min", "max", "n_points", "scale"}, sec);
    SweepAxis a;
    if (!j.contains("parameter") || !j["parameter"].is_string())
        throw ConfigError(sec + ".parameter: string required");
    a.path = sweep_path_from_string(j["parameter"].get<std::string>());
    a.min = bare_number(j.at("min"), sec + ".min");
    a.max = bare_number(j.at("max"), sec + ".max");
    if (!j.contains("n_points") || !j["n_points"].is_number_integer())
        throw ConfigError(sec + ".n_points: integer required");
    a.n_points = j["n_points"].get<int>();
    if (j.contains("scale")) {
        const std::string s = j["scale"].get<std::string>();
        if (s == "linear") a.log_scale = false;
        else if (s == "log") a.log_scale = true;
        else throw ConfigError(sec + ".scale: expected 'linear' or 'log'");
    }
    a.validate(sec);
    return a;
}

void parse_oracle(const json& j, OracleSettings& o, const std::string& sec) {
    reject_unknown_keys(j, {"dt", "n_steps", "n_trajectories", "burn_in_fraction", "seed"}, sec);
    if (j.contains("dt")) o.dt = bare_number(j["dt"], sec + ".dt");
    if (j.contains("n_steps")) o.n_steps = j["n_steps"].get<long>();
    if (j.contains("n_trajectories")) o.n_trajectories = j["n_trajectories"].get<int>();
    if (j.contains("burn_in_fraction"))
        o.burn_in_fraction = bare_number(j["burn_in_fraction"], sec + ".burn_in_fraction");
    if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
}

}  // namespace

SystemParams default_params() {
    SystemParams p;
    p.gain.linear_gain_A = 250e6;            // 250 MHz, taken as rad/s as written
    p.gain.atomic_decay_gamma = 1.7e6;       // 1.7 MHz, likewise
    p.gain.drive_strength_Omega = 6.0 * p.gain.atomic_decay_gamma;
    p.cavity_1.kappa = k_two_pi * 215e3;
    p.cavity_2.kappa = k_two_pi * 215e3;
    p.cavity_1.g_over_wm = 0.25;
    p.cavity_2.g_over_wm = 0.25;
    p.mirror_1.omega_m = k_two_pi * 947e3;
    p.mirror_2.omega_m = k_two_pi * 947e3;
    p.mirror_1.gamma_m = k_two_pi * 140.0;
    p.mirror_2.gamma_m = k_two_pi * 140.0;
    p.mirror_1.n_th = 15.0;
    p.mirror_2.n_th = 5.0;
    return p;
}

SweepSpec default_sweep() {
    SweepSpec s;
    s.axis1.path = SweepPath::omega_over_gamma;
    s.axis1.min = 0.0;
    s.axis1.max = 12.0;
    s.axis1.n_points = 481;
    return s;
}

SweepSpec default_stability_axes() {
    SweepSpec s;
    s.axis1.path = SweepPath::g2_over_wm;
    s.axis1.min = 0.0;
    s.axis1.max = 0.35;
    s.axis1.n_points = 71;
    SweepAxis a2;
    a2.path = SweepPath::omega_over_gamma;
    a2.min = 0.0;
    a2.max = 12.0;
    a2.n_points = 121;
    s.axis2 = a2;
    return s;
}

LoadedConfig load_config_from_string(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top-level JSON object required");
    reject_unknown_keys(root, {"gain", "cavity_1", "cavity_2", "mirror_1", "mirror_2",
                               "sweep", "oracle"},
                        "config");

    LoadedConfig out;
    out.params = default_params();
    out.sweep = default_sweep();

    if (root.contains("gain")) parse_gain(root["gain"], out.params.gain, "gain", &out.warnings);
    if (root.contains("cavity_1")) parse_cavity(root["cavity_1"], out.params.cavity_1, "cavity_1");
    if (root.contains("cavity_2")) parse_cavity(root["cavity_2"], out.params.cavity_2, "cavity_2");
    if (root.contains("mirror_1")) parse_mirror(root["mirror_1"], out.params.mirror_1, "mirror_1");
    if (root.contains("mirror_2")) parse_mirror(root["mirror_2"], out.params.mirror_2, "mirror_2");
    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        reject_unknown_keys(sw, {"axis1", "axis2", "outputs"}, "sweep");
        if (!sw.contains("axis1")) throw ConfigError("sweep.axis1: required");
        out.sweep.axis1 = parse_axis(sw["axis1"], "sweep.axis1");
        out.sweep.axis2.reset();
        if (sw.contains("axis2")) out.sweep.axis2 = parse_axis(sw["axis2"], "sweep.axis2");
        if (sw.contains("outputs")) {
            if (!sw["outputs"].is_array()) throw ConfigError("sweep.outputs: array required");
            for (const auto& o : sw["outputs"])
                out.sweep.outputs.insert(output_field_from_string(o.get<std::string>()));
        }
        out.sweep_given = true;
    }
    if (root.contains("oracle")) parse_oracle(root["oracle"], out.oracle, "oracle");

    out.params.validate(&out.warnings);
    return out;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_config_from_string(text);
}

}  // namespace celsteer
