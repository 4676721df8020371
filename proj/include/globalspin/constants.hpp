#pragma once

#include <numbers>

namespace globalspin::phys {

// Pinned to the values the device estimates were made with, not CODATA.
inline constexpr double kBohrMagneton = 9.27e-24;  // J/T
inline constexpr double kHbar = 1.0546e-34;        // J s
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // T m / A

}  // namespace globalspin::phys
