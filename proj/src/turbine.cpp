#include "thrustgov/turbine.hpp"

#include <cmath>

#include "thrustgov/common.hpp"

namespace thrustgov {

namespace {
constexpr double kOmegaFloor = 1e-3;  // rad/s
}

double TurbineParams::swept_area() const { return kPi * radius * radius; }

void TurbineParams::validate() const {
    require(rho > 0.0, "rho must be > 0");
    require(radius > 0.0, "radius must be > 0");
    require(inertia > 0.0, "inertia must be > 0");
    require(gear_ratio > 0.0, "gear_ratio must be > 0");
    require(eta_eff > 0.0, "eta_eff must be > 0");
    require(rated_power > 0.0, "rated_power must be > 0");
    require(rated_gen_speed > 0.0, "rated_gen_speed must be > 0");
    require(min_gen_speed > 0.0 && min_gen_speed < rated_gen_speed,
            "need 0 < min_gen_speed < rated_gen_speed");
    require(pitch_max > pitch_min, "pitch range is empty");
    require(pitch_rate_limit > 0.0, "pitch_rate_limit must be > 0");
    require(torque_rate_limit > 0.0, "torque_rate_limit must be > 0");
}

double aero_torque(const TurbineParams& params, const AeroSurface& surface, double v,
                   double omega_r, double theta) {
    const double lambda = params.radius * omega_r / v;
    const double cp_val = cp(surface, lambda, theta);
    return 0.5 * params.rho * params.swept_area() * v * v * v * cp_val / omega_r;
}

double aero_thrust_true(const TurbineParams& params, const AeroSurface& surface, double v,
                        double omega_r, double theta) {
    const double lambda = params.radius * omega_r / v;
    return 0.5 * params.rho * params.swept_area() * v * v * ct(surface, lambda, theta);
}

TurbineState step(const TurbineParams& params, const AeroSurface& surface,
                  const TurbineState& state, const ActuatorCommands& commands, double v,
                  double dt) {
    require(dt > 0.0, "dt must be > 0");
    require_finite(state.omega_r, "turbine step omega_r");
    require_finite(state.theta, "turbine step theta");
    require_finite(state.tau_g, "turbine step tau_g");
    require_finite(commands.theta_ref, "turbine step theta_ref");
    require_finite(commands.tau_g_ref, "turbine step tau_g_ref");
    require_finite(v, "turbine step wind speed");

    TurbineState next = state;
    next.theta = saturate(rate_limit(state.theta, commands.theta_ref, params.pitch_rate_limit, dt),
                          params.pitch_min, params.pitch_max);
    next.tau_g = std::max(
        0.0, rate_limit(state.tau_g, commands.tau_g_ref, params.torque_rate_limit, dt));

    const double load = params.gear_ratio * next.tau_g;
    const auto domega = [&](double omega) {
        return (aero_torque(params, surface, v, omega, next.theta) - load) / params.inertia;
    };
    const double w = state.omega_r;
    const double k1 = domega(w);
    const double k2 = domega(std::max(kOmegaFloor, w + 0.5 * dt * k1));
    const double k3 = domega(std::max(kOmegaFloor, w + 0.5 * dt * k2));
    const double k4 = domega(std::max(kOmegaFloor, w + dt * k3));
    next.omega_r = w + dt / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
    if (next.omega_r < kOmegaFloor) {
        next.omega_r = kOmegaFloor;
        ++next.floor_hits;
    }
    next.t = state.t + dt;
    require_finite(next.omega_r, "turbine step result omega_r");
    return next;
}

double generated_power(const TurbineParams& params, const TurbineState& state) {
    return params.eta_eff * state.tau_g * state.omega_g(params);
}

}  // namespace thrustgov
