#pragma once

#include <string>
#include <vector>

#include "thrustgov/governor.hpp"

namespace thrustgov {

/// A demanded-power step experiment: thrust samples at fixed dt with the
/// power stepping from p_dem_before to p_dem_after at step_time.
struct StepExperiment {
    double dt = 0.0;            // s
    double p_dem_before = 0.0;  // W
    double p_dem_after = 0.0;   // W
    double step_time = 0.0;     // s, measured from the first sample
    std::vector<double> thrust_series;  // N

    void validate() const;
};

struct FitResult {
    PlantModel model;      // a in N/(W s), b in 1/s
    double f0 = 0.0;       // pre-step thrust level, N
    double residual_rms = 0.0;   // N
    double excursion = 0.0;      // steady thrust change magnitude, N
};

/// Fit F(t) = F0 + dP (a/b)(1 - exp(-b (t - t0))) by golden-section search
/// over b with closed-form linear least squares for (F0, a/b) at each
/// candidate. Rejects zero steps and series that have not settled (last 10%
/// of samples varying more than 2% of the total excursion).
FitResult fit_first_order(const StepExperiment& exp);

/// Columns (t, p_dem, thrust) with an optional header row; the step instant
/// is taken from the first change in the p_dem column.
StepExperiment load_step_csv(const std::string& path);

/// Model prediction per sample, for residual inspection.
std::vector<double> predicted_response(const StepExperiment& exp, const FitResult& fit);

}  // namespace thrustgov
