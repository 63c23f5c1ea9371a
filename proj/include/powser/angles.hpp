#ifndef POWSER_ANGLES_HPP
#define POWSER_ANGLES_HPP

#include <cmath>
#include <numbers>

namespace powser {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce t to [0, 2 pi). Exact multiples of 2 pi map to 0.
inline double reduce_angle(double t) {
    double r = t - kTwoPi * std::floor(t / kTwoPi);
    if (r >= kTwoPi) r = 0.0; // floor rounding at the seam
    return r;
}

/// ||t||: distance from t to the nearest integer multiple of 2 pi.
inline double circle_norm(double t) {
    const double r = t - kTwoPi * std::round(t / kTwoPi);
    return std::fabs(r);
}

} // namespace powser

#endif // POWSER_ANGLES_HPP
