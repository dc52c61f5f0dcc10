#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "thrustgov/common.hpp"

namespace thrustgov {

// mt19937_64-backed standard normal via Box-Muller. Hand-rolled so seeded
// runs are reproducible across standard library implementations.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * kPi * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    double uniform_open() {
        // (0, 1]: avoids log(0).
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace thrustgov
