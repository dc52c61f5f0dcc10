#pragma once

#include <string>
#include <vector>

#include "thrustgov/scenario.hpp"
#include "thrustgov/simlog.hpp"

namespace thrustgov {

/// Closed-loop run wiring governor -> down-regulator -> turbine -> estimators
/// -> governor. Per step: measure, estimate wind, estimate thrust, governor
/// update, mode select, regulator commands, plant step. Deterministic for a
/// given scenario and seed.
SimLog run(const Scenario& scenario);

/// Same run against a pre-built surface (lets sweeps share one table).
SimLog run(const Scenario& scenario, const AeroSurface& surface);

/// Reductions of a constrained run against its unconstrained baseline,
/// computed on the post-settle window.
struct RunMetrics {
    double f_t_ref = 0.0;              // N; bound of the constrained run
    double thrust_reduction_pct = 0.0; // of settled max estimated thrust
    double max_power_loss_w = 0.0;     // max over settled time of baseline - constrained
    double power_reduction_pct = 0.0;  // max over settled time, relative to baseline
    double mean_f_hat = 0.0;           // settled mean of the constrained run, N
    double mean_p_gen = 0.0;           // settled mean of the constrained run, W
};

RunMetrics metrics(const SimLog& log, const SimLog& baseline, double settle_time);

/// Loop open/close transition count per 100 s over the settled window
/// (the anti-chattering figure of merit).
double switch_transitions_per_100s(const SimLog& log, double settle_time);

struct SweepRow {
    double f_t_ref;
    RunMetrics summary;
};

/// One constrained run per thrust reference against one shared
/// governor-disabled baseline. Rows keep the input order; runs execute
/// concurrently.
std::vector<SweepRow> sweep(const Scenario& base, const std::vector<double>& thrust_refs);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Time series plots (power and thrust vs time, bound drawn on the thrust
/// axis) as self-contained SVG files.
void write_run_svg(const SimLog& log, const Scenario& scenario, const std::string& path_prefix);

}  // namespace thrustgov
