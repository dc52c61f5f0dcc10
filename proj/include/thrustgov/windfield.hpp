#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace thrustgov {

enum class WindKind { kConstant, kSteps, kTurbulent };

/// Rotor-effective inflow description. Turbulent traces use a discrete
/// mean-reverting (Ornstein-Uhlenbeck) process with stationary standard
/// deviation turbulence_intensity * mean_speed.
struct WindSpec {
    WindKind kind = WindKind::kConstant;
    double mean_speed = 9.0;            // m/s, > 0
    double turbulence_intensity = 0.0;  // fraction, [0, 0.5)
    double correlation_time = 10.0;     // s, > 0
    std::uint64_t seed = 1;
    std::vector<std::pair<double, double>> step_schedule;  // (time s, speed m/s)

    void validate() const;
};

struct WindTrace {
    double dt = 0.0;              // s, > 0
    std::vector<double> samples;  // m/s, all > 0
    int floor_hits = 0;           // times the 0.2*mean floor engaged; 0 in nominal runs

    double at_step(std::size_t k) const {
        return samples[k < samples.size() ? k : samples.size() - 1];
    }
};

/// Generate duration/dt samples. Pure in (spec, duration, dt): identical
/// seeds give bit-identical traces.
WindTrace generate(const WindSpec& spec, double duration, double dt);

/// Plain-text trace, one positive m/s value per line.
WindTrace load_trace(const std::string& path, double dt);
void save_trace(const WindTrace& trace, const std::string& path);

}  // namespace thrustgov
