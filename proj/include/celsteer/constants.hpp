#ifndef CELSTEER_CONSTANTS_HPP_
#define CELSTEER_CONSTANTS_HPP_

namespace celsteer {

// 2019 SI exact values
inline constexpr double k_hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K

inline constexpr double k_two_pi = 6.28318530717958647692528676656;

}  // namespace celsteer

#endif
