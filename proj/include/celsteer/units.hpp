#ifndef CELSTEER_UNITS_HPP_
#define CELSTEER_UNITS_HPP_

#include <string>

namespace celsteer {

enum class Unit { hz, khz, mhz, millikelvin, kelvin, dimensionless };

Unit unit_from_string(const std::string& s);
std::string to_string(Unit u);

// One configured physical quantity. Rates are stored the way the user wrote
// them; to_angular() applies the unit scale and the explicit 2pi flag, so the
// ambiguity between angular and ordinary frequencies stays a visible input
// choice instead of a hidden convention.
struct Quantity {
    double value = 0.0;
    Unit unit = Unit::dimensionless;
    bool times_two_pi = false;
};

// rad/s; rejects temperature and dimensionless units.
double to_angular(const Quantity& q, const std::string& key);

// K; rejects rate units.
double to_kelvin(const Quantity& q, const std::string& key);

}  // namespace celsteer

#endif
