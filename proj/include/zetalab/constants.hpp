#pragma once

namespace zetalab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kLnTwoPi = 1.83787706640934548356;

// Euler's constant, denoted c in all main-term coefficients.
inline constexpr double kEulerGamma = 0.57721566490153286061;

} // namespace zetalab
