#pragma once

#include "thrustgov/aero.hpp"

namespace thrustgov {

/// Physical constants of the reduced-order plant. Defaults are surrogate
/// values of DTU-10MW magnitude (rotor radius and rated power are the
/// published figures; inertia and actuator limits are stand-ins).
struct TurbineParams {
    double rho = 1.225;                // air density, kg/m^3
    double radius = 89.15;             // rotor radius, m
    double inertia = 1.6e8;            // rotor-equivalent inertia, kg m^2
    double gear_ratio = 50.0;          // generator speed / rotor speed
    double eta_eff = 1.0;              // drivetrain efficiency
    double rated_power = 1.0e7;        // W
    double rated_gen_speed = 50.26;    // rad/s, generator side
    double min_gen_speed = 15.7;       // rad/s, generator side
    double pitch_min = 0.0;            // rad
    double pitch_max = 1.5707963267948966;  // rad (90 deg)
    double pitch_rate_limit = 0.17453292519943295;  // rad/s (10 deg/s)
    double torque_rate_limit = 1.5e4;  // N m / s, generator side

    double swept_area() const;         // pi R^2, m^2
    double rated_torque() const { return rated_power / (eta_eff * rated_gen_speed); }

    void validate() const;
};

/// Dynamic state of the plant. omega_r is the single integrated state;
/// theta and tau_g are actuator states moved by rate limits.
struct TurbineState {
    double omega_r = 0.0;  // rotor speed, rad/s, > 0
    double theta = 0.0;    // collective pitch, rad
    double tau_g = 0.0;    // generator torque, N m, generator side, >= 0
    double t = 0.0;        // s
    int floor_hits = 0;    // times the rotor-speed floor engaged

    double omega_g(const TurbineParams& p) const { return p.gear_ratio * omega_r; }
};

/// Aerodynamic rotor torque 0.5 rho pi R^2 v^3 Cp(R omega/v, theta) / omega.
double aero_torque(const TurbineParams& params, const AeroSurface& surface, double v,
                   double omega_r, double theta);

/// Ground-truth fore-aft thrust 0.5 rho pi R^2 v^2 Ct(R omega/v, theta),
/// evaluated with the true wind speed.
double aero_thrust_true(const TurbineParams& params, const AeroSurface& surface, double v,
                        double omega_r, double theta);

struct ActuatorCommands {
    double theta_ref;  // rad
    double tau_g_ref;  // N m, generator side
};

/// Advance one fixed step: slew actuators toward the commands, then integrate
/// J domega/dt = tau_a - N tau_g with classic RK4 (commands and wind held over
/// the step). Rotor speed is floored at 1e-3 rad/s with floor-hit counting.
/// Non-finite inputs throw: a NaN here is a simulation bug.
TurbineState step(const TurbineParams& params, const AeroSurface& surface,
                  const TurbineState& state, const ActuatorCommands& commands, double v,
                  double dt);

/// Electrical power eta_eff * tau_g * omega_g.
double generated_power(const TurbineParams& params, const TurbineState& state);

}  // namespace thrustgov
