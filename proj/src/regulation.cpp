#include "thrustgov/regulation.hpp"

#include <algorithm>
#include <cmath>

#include "thrustgov/common.hpp"

namespace thrustgov {

namespace {
constexpr double kGenSpeedFloor = 1.0;  // rad/s, torque-law division floor
}

void RegulatorConfig::validate() const {
    require(kp0 > 0.0, "regulator kp0 must be > 0");
    require(ki0 > 0.0, "regulator ki0 must be > 0");
    require(theta_k > 0.0, "regulator theta_k must be > 0");
    require(k_opt > 0.0, "regulator k_opt must be > 0");
    require(theta_switch > theta_fine, "theta_switch must exceed theta_fine");
}

double derive_k_opt(const TurbineParams& params, const AeroSurface& surface) {
    const OptimalPoint opt = max_cp_point(surface);
    const double r5 = std::pow(params.radius, 5);
    const double n3 = std::pow(params.gear_ratio, 3);
    return 0.5 * params.rho * kPi * r5 * opt.cp / (std::pow(opt.lambda, 3) * n3);
}

double gen_speed_ref(const RegulatorConfig& config, const TurbineParams& params, double p_dem) {
    require(p_dem > 0.0, "demanded power must be > 0");
    const double omega = std::cbrt(p_dem / (params.eta_eff * config.k_opt));
    return std::clamp(omega, params.min_gen_speed, params.rated_gen_speed);
}

double pitch_command(const RegulatorConfig& config, const TurbineParams& params,
                     RegulatorState& state, double omega_g_meas, double omega_g_ref,
                     double theta_meas, double dt) {
    require(dt > 0.0, "dt must be > 0");
    const double schedule = 1.0 / (1.0 + std::max(0.0, theta_meas) / config.theta_k);
    const double kp = config.kp0 * schedule;
    const double ki = config.ki0 * schedule;
    const double err = omega_g_meas - omega_g_ref;

    const double integ_candidate = state.pitch_integrator + ki * err * dt;
    const double raw = config.theta_fine + kp * err + integ_candidate;
    const double cmd = saturate(raw, params.pitch_min, params.pitch_max);
    const bool push_past_saturation =
        (raw > cmd && err > 0.0) || (raw < cmd && err < 0.0);
    if (!push_past_saturation) {
        state.pitch_integrator =
            std::clamp(integ_candidate, params.pitch_min - config.theta_fine, params.pitch_max);
    }
    state.omega_g_ref = omega_g_ref;
    return cmd;
}

double torque_command(const RegulatorConfig& config, const TurbineParams& params, double p_dem,
                      double omega_g_meas) {
    (void)config;
    require(p_dem >= 0.0, "demanded power must be >= 0");
    const double tau_max = 1.5 * params.rated_torque();
    if (omega_g_meas <= kGenSpeedFloor) {
        // Never divide toward infinity; the cap is the safe command here.
        return tau_max;
    }
    return saturate(p_dem / (params.eta_eff * omega_g_meas), 0.0, tau_max);
}

RegulatorMode mode_select(const RegulatorConfig& config, double p_dem, double rated_power,
                          double omega_g_meas, double omega_g_ref, double theta_meas) {
    if (p_dem < rated_power &&
        (omega_g_meas > omega_g_ref || theta_meas > config.theta_switch)) {
        return RegulatorMode::kDownReg;
    }
    return RegulatorMode::kConventional;
}

ActuatorCommands conventional_step(const RegulatorConfig& config, const TurbineParams& params,
                                   RegulatorState& state, double omega_g_meas,
                                   double theta_meas, double dt) {
    const double omega = std::max(kGenSpeedFloor, omega_g_meas);
    double tau = config.k_opt * omega * omega;
    tau = std::min(tau, params.rated_power / (params.eta_eff * omega));
    tau = saturate(tau, 0.0, 1.5 * params.rated_torque());
    // Below rated speed the PI saturates at fine pitch; above it regulates.
    const double theta =
        pitch_command(config, params, state, omega_g_meas, params.rated_gen_speed, theta_meas, dt);
    return ActuatorCommands{theta, tau};
}

ActuatorCommands regulator_step(const RegulatorConfig& config, const TurbineParams& params,
                                RegulatorState& state, double p_dem, double omega_g_meas,
                                double theta_meas, double dt) {
    const double omega_ref = gen_speed_ref(config, params, p_dem);
    state.mode = mode_select(config, p_dem, params.rated_power, omega_g_meas, omega_ref,
                             theta_meas);
    if (state.mode == RegulatorMode::kDownReg) {
        const double theta =
            pitch_command(config, params, state, omega_g_meas, omega_ref, theta_meas, dt);
        const double tau = torque_command(config, params, p_dem, omega_g_meas);
        return ActuatorCommands{theta, tau};
    }
    return conventional_step(config, params, state, omega_g_meas, theta_meas, dt);
}

}  // namespace thrustgov
