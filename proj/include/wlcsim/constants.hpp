#pragma once

namespace wlcsim::constants {

// CODATA / exact SI values
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
inline constexpr double c_light = 299792458.0;       // m / s
inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr double hz_to_rad(double f_hz) { return two_pi * f_hz; }
inline constexpr double rad_to_hz(double w_rad) { return w_rad / two_pi; }

}  // namespace wlcsim::constants
