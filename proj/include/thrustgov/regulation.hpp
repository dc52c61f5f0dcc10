#pragma once

#include "thrustgov/aero.hpp"
#include "thrustgov/turbine.hpp"

namespace thrustgov {

/// Gains and thresholds of the power down-regulator and the conventional
/// baseline controller it falls back to.
struct RegulatorConfig {
    double kp0 = 0.09;     // baseline pitch proportional gain, rad per (rad/s) of gen-speed error
    double ki0 = 0.035;    // baseline pitch integral gain, rad per rad
    double theta_k = 0.13962634015954636;  // gain-schedule knee, rad (8 deg)
    double k_opt = 81.2;   // conventional torque constant, N m/(rad/s)^2, generator side
    double theta_switch = 0.017453292519943295;  // switch pitch angle, rad (1 deg)
    double theta_fine = 0.0;  // fine pitch, rad

    void validate() const;
};

enum class RegulatorMode { kConventional, kDownReg };

struct RegulatorState {
    double pitch_integrator = 0.0;  // rad, bounded by the anti-windup clamp
    RegulatorMode mode = RegulatorMode::kConventional;
    double omega_g_ref = 0.0;       // last reference, rad/s
};

/// Torque constant that makes the conventional law track the surface's
/// max-Cp point: 0.5 rho pi R^5 Cp* / (lambda*^3 N^3).
double derive_k_opt(const TurbineParams& params, const AeroSurface& surface);

/// Generator speed reference for a demanded power, inverting
/// P = eta k_opt omega_g^3 and clamping to the operating speed band.
double gen_speed_ref(const RegulatorConfig& config, const TurbineParams& params, double p_dem);

/// Gain-scheduled pitch PI tracking a generator speed reference. Schedule is
/// K(theta) = K0 / (1 + theta/theta_k); output clamped to the pitch range
/// with conditional integration (integrator frozen when the output is
/// saturated in the direction the error pushes).
double pitch_command(const RegulatorConfig& config, const TurbineParams& params,
                     RegulatorState& state, double omega_g_meas, double omega_g_ref,
                     double theta_meas, double dt);

/// Demanded-power tracking torque p_dem / (eta omega_g), clamped to
/// [0, 1.5 x rated torque]. Speeds below 1 rad/s clamp at the cap instead of
/// dividing toward infinity.
double torque_command(const RegulatorConfig& config, const TurbineParams& params, double p_dem,
                      double omega_g_meas);

/// Down-regulation engages when demanded power is below rated and either the
/// generator runs above its reference or the blades are pitched past the
/// switch angle.
RegulatorMode mode_select(const RegulatorConfig& config, double p_dem, double rated_power,
                          double omega_g_meas, double omega_g_ref, double theta_meas);

/// Conventional baseline: region-2 optimal torque k_opt omega_g^2, capped at
/// rated power over speed; pitch PI regulates to rated speed (saturating at
/// fine pitch below rated).
ActuatorCommands conventional_step(const RegulatorConfig& config, const TurbineParams& params,
                                   RegulatorState& state, double omega_g_meas,
                                   double theta_meas, double dt);

/// One regulator update: select the mode for the current demanded power and
/// produce pitch/torque references.
ActuatorCommands regulator_step(const RegulatorConfig& config, const TurbineParams& params,
                                RegulatorState& state, double p_dem, double omega_g_meas,
                                double theta_meas, double dt);

}  // namespace thrustgov
