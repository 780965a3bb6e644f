#pragma once

#include "cdsim/types.hpp"

namespace cdsim::units {

// All frequencies are stored internally in rad/s and all times in seconds.
// The "2pi x MHz" forms exist so configuration files can quote values the
// way the literature does, without silent 2pi slips.
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double two_pi_hz(double v) { return v * two_pi; }
inline constexpr double two_pi_khz(double v) { return v * two_pi * 1e3; }
inline constexpr double two_pi_mhz(double v) { return v * two_pi * 1e6; }
inline constexpr double two_pi_ghz(double v) { return v * two_pi * 1e9; }

}  // namespace cdsim::units
