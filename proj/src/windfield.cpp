#include "thrustgov/windfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "thrustgov/common.hpp"
#include "thrustgov/random.hpp"

namespace thrustgov {

void WindSpec::validate() const {
    require(mean_speed > 0.0, "wind mean_speed must be > 0");
    require(turbulence_intensity >= 0.0 && turbulence_intensity < 0.5,
            "turbulence_intensity must be in [0, 0.5)");
    require(correlation_time > 0.0, "correlation_time must be > 0");
    for (std::size_t i = 0; i < step_schedule.size(); ++i) {
        require(step_schedule[i].second > 0.0,
                "step speed must be > 0 at schedule entry " + std::to_string(i));
        if (i > 0)
            require(step_schedule[i].first > step_schedule[i - 1].first,
                    "step times must be strictly increasing");
    }
}

WindTrace generate(const WindSpec& spec, double duration, double dt) {
    spec.validate();
    require(duration > 0.0, "duration must be > 0");
    require(dt > 0.0, "dt must be > 0");

    const std::size_t n = static_cast<std::size_t>(std::llround(duration / dt));
    WindTrace trace;
    trace.dt = dt;
    trace.samples.resize(n);

    switch (spec.kind) {
        case WindKind::kConstant:
            std::fill(trace.samples.begin(), trace.samples.end(), spec.mean_speed);
            break;
        case WindKind::kSteps: {
            double v = spec.mean_speed;
            std::size_t next = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) * dt;
                while (next < spec.step_schedule.size() &&
                       t >= spec.step_schedule[next].first) {
                    v = spec.step_schedule[next].second;
                    ++next;
                }
                trace.samples[k] = v;
            }
            break;
        }
        case WindKind::kTurbulent: {
            // Exact OU discretization: stationary in mean and variance at any dt.
            const double sigma = spec.turbulence_intensity * spec.mean_speed;
            const double phi = std::exp(-dt / spec.correlation_time);
            const double noise_scale = sigma * std::sqrt(1.0 - phi * phi);
            const double floor = 0.2 * spec.mean_speed;
            GaussianSource gauss(spec.seed);
            double v = spec.mean_speed;
            for (std::size_t k = 0; k < n; ++k) {
                v = spec.mean_speed + phi * (v - spec.mean_speed) + noise_scale * gauss.next();
                if (v < floor) {
                    v = floor;
                    ++trace.floor_hits;
                }
                trace.samples[k] = v;
            }
            break;
        }
    }
    return trace;
}

WindTrace load_trace(const std::string& path, double dt) {
    require(dt > 0.0, "dt must be > 0");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    WindTrace trace;
    trace.dt = dt;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double v = 0.0;
        try {
            std::size_t pos = 0;
            v = std::stod(line, &pos);
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            if (pos != line.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": not a number: '" + line + "'");
        }
        if (!(v > 0.0))
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": wind speed must be > 0, got " + line);
        trace.samples.push_back(v);
    }
    if (trace.samples.empty()) throw std::runtime_error(path + ": no samples");
    return trace;
}

void save_trace(const WindTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    char buf[32];
    for (double v : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << '\n';
    }
}

}  // namespace thrustgov
