#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace thrustgov {

inline constexpr double kPi = 3.14159265358979323846;

// Rotor power/thrust coefficients never exceed the Betz limit / momentum-theory cap.
inline constexpr double kBetzLimit = 0.593;
inline constexpr double kCtMax = 2.0;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline bool is_finite(double x) { return std::isfinite(x); }

// Validation failure on caller-supplied data.
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Hard failure: a NaN/Inf reaching a simulation state is a bug, never continued.
inline void require_finite(double x, const std::string& name) {
    if (!std::isfinite(x)) {
        throw std::runtime_error("non-finite value in " + name);
    }
}

// Saturate x into [lo, hi]. Returns +0.0 rather than -0.0 at the lower bound
// so that clamped outputs compare bit-identical to a literal zero.
inline double saturate(double x, double lo, double hi) {
    if (x < lo) return lo;
    if (x > hi) return hi;
    return x == 0.0 ? std::abs(x) : x;
}

// One-step slew limit: move current toward target by at most rate*dt.
inline double rate_limit(double current, double target, double rate, double dt) {
    const double max_delta = rate * dt;
    if (target > current + max_delta) return current + max_delta;
    if (target < current - max_delta) return current - max_delta;
    return target;
}

}  // namespace thrustgov
