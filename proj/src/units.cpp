#include "celsteer/units.hpp"

#include <cmath>

#include "celsteer/constants.hpp"
#include "celsteer/errors.hpp"

namespace celsteer {

Unit unit_from_string(const std::string& s) {
    if (s == "Hz") return Unit::hz;
    if (s == "kHz") return Unit::khz;
    if (s == "MHz") return Unit::mhz;
    if (s == "mK") return Unit::millikelvin;
    if (s == "K") return Unit::kelvin;
    if (s == "dimensionless") return Unit::dimensionless;
    throw ConfigError("unknown unit '" + s + "' (expected Hz|kHz|MHz|mK|K|dimensionless)");
}

std::string to_string(Unit u) {
    switch (u) {
        case Unit::hz: return "Hz";
        case Unit::khz: return "kHz";
        case Unit::mhz: return "MHz";
        case Unit::millikelvin: return "mK";
        case Unit::kelvin: return "K";
        case Unit::dimensionless: return "dimensionless";
    }
    return "?";
}

double to_angular(const Quantity& q, const std::string& key) {
    if (!std::isfinite(q.value))
        throw ConfigError(key + ": value must be finite");
    double scale = 0.0;
    switch (q.unit) {
        case Unit::hz: scale = 1.0; break;
        case Unit::khz: scale = 1e3; break;
        case Unit::mhz: scale = 1e6; break;
        default:
            throw ConfigError(key + ": unit " + to_string(q.unit) + " is not a rate unit");
    }
    return q.value * scale * (q.times_two_pi ? k_two_pi : 1.0);
}

double to_kelvin(const Quantity& q, const std::string& key) {
    if (!std::isfinite(q.value))
        throw ConfigError(key + ": value must be finite");
    if (q.times_two_pi)
        throw ConfigError(key + ": times_two_pi makes no sense for a temperature");
    switch (q.unit) {
        case Unit::millikelvin: return q.value * 1e-3;
        case Unit::kelvin: return q.value;
        default:
            throw ConfigError(key + ": unit " + to_string(q.unit) + " is not a temperature unit");
    }
}

}  // namespace celsteer
