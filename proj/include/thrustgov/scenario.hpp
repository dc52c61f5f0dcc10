#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thrustgov/aero.hpp"
#include "thrustgov/estimation.hpp"
#include "thrustgov/governor.hpp"
#include "thrustgov/regulation.hpp"
#include "thrustgov/turbine.hpp"
#include "thrustgov/windfield.hpp"

namespace thrustgov {

inline constexpr int kScenarioSchemaVersion = 1;

enum class SurfaceSource { kParametric, kFile };

enum class PowerRefKind { kConstant, kSchedule, kProfileFile };

/// External power reference. Schedules are piecewise-linear (t, W) pairs;
/// profile files hold a normalized [0, 1] signal scaled to
/// [scale_min_w, scale_max_w].
struct PowerReferenceSpec {
    PowerRefKind kind = PowerRefKind::kConstant;
    double constant_w = 4.0e6;
    std::vector<std::pair<double, double>> schedule;
    std::string profile_path;
    double scale_min_w = 3.0e6;
    double scale_max_w = 5.0e6;
};

/// Resolved reference signal: piecewise-linear interpolation, held flat
/// outside the breakpoint range.
struct PowerReference {
    std::vector<std::pair<double, double>> points;
    double at(double t) const;
};

struct MeasurementNoise {
    double omega_r_std = 0.0;  // rad/s
    double tau_g_std = 0.0;    // N m
    double theta_std = 0.0;    // rad
    bool any() const { return omega_r_std > 0.0 || tau_g_std > 0.0 || theta_std > 0.0; }
};

struct EstimatorConfig {
    double gamma = 20.0;     // m/s per rad/s
    double v_hat_init = 0.0; // m/s; <= 0 means "from the steady map"
};

/// Everything one closed-loop run needs. Loadable from a JSON file with a
/// schema_version field; unknown keys are rejected to catch typos.
struct Scenario {
    int schema_version = kScenarioSchemaVersion;
    double duration = 400.0;  // s
    double dt = 0.01;         // s
    int log_every = 1;        // logging interval in steps
    double settle_time = 100.0;  // s discarded by metrics
    std::uint64_t seed = 1;

    TurbineParams turbine;
    SurfaceSource surface_source = SurfaceSource::kParametric;
    ParametricCoeffs surface_coeffs;
    std::string surface_cp_path;
    std::string surface_ct_path;

    WindSpec wind;
    PowerReferenceSpec power_reference;

    bool governor_enabled = false;
    GovernorConfig governor;
    EstimatorConfig estimator;
    RegulatorConfig regulator;
    bool k_opt_auto = true;  // derive k_opt from the loaded surface
    MeasurementNoise noise;

    std::string out_dir = ".";
    std::string log_name = "simlog.csv";
    bool emit_svg = false;

    void validate() const;
};

/// Tuned defaults for the shipped plant: constant 9 m/s inflow, 4 MW power
/// reference, governor gains from the identified first-order model of this
/// plant (see README).
Scenario default_scenario();

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);
std::string scenario_to_json(const Scenario& scenario);

/// Build the aero surface named by the scenario.
AeroSurface build_surface(const Scenario& scenario);

/// Resolve the power reference (loads the profile file if any).
PowerReference build_power_reference(const PowerReferenceSpec& spec);

}  // namespace thrustgov
