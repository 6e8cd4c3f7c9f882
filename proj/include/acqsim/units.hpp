#pragma once

#include <numbers>

namespace acqsim {

// All internal frequencies and rates are angular (rad/s); all internal times
// are seconds. Cyclic units (Hz, GHz, MHz) exist only at the config/CLI
// boundary and in CSV output, converted through these helpers.

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double angular_from_hz(double f_hz) { return two_pi * f_hz; }
inline constexpr double hz_from_angular(double w) { return w / two_pi; }
inline constexpr double ghz_from_angular(double w) { return w / two_pi * 1e-9; }
inline constexpr double mhz_from_angular(double w) { return w / two_pi * 1e-6; }
inline constexpr double angular_from_ghz(double f) { return two_pi * f * 1e9; }
inline constexpr double angular_from_mhz(double f) { return two_pi * f * 1e6; }

inline constexpr double seconds_from_ns(double t_ns) { return t_ns * 1e-9; }
inline constexpr double ns_from_seconds(double t_s) { return t_s * 1e9; }

}  // namespace acqsim
