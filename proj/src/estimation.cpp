#include "thrustgov/estimation.hpp"

#include <algorithm>

#include "thrustgov/common.hpp"

namespace thrustgov {

namespace {
constexpr double kVhatFloor = 0.5;  // m/s
}

void EstimatorState::validate() const { require(gamma > 0.0, "estimator gamma must be > 0"); }

EstimatorState init_estimator(double gamma, double v_init, double omega_r) {
    require(gamma > 0.0, "estimator gamma must be > 0");
    require(v_init > 0.0, "estimator v_init must be > 0");
    EstimatorState est;
    est.gamma = gamma;
    est.xi = v_init - gamma * omega_r;
    est.v_hat = v_init;
    return est;
}

EstimatorState ii_update(const EstimatorState& est, const TurbineParams& params,
                         const AeroSurface& surface, double omega_r_meas, double tau_g_meas,
                         double theta_meas, double dt) {
    est.validate();
    require(dt > 0.0, "dt must be > 0");
    require_finite(omega_r_meas, "estimator omega_r_meas");
    require_finite(tau_g_meas, "estimator tau_g_meas");
    require_finite(theta_meas, "estimator theta_meas");
    require(omega_r_meas > 0.0, "estimator omega_r_meas must be > 0");

    const double v_hat = std::max(kVhatFloor, est.xi + est.gamma * omega_r_meas);
    const double torque_mismatch =
        aero_torque(params, surface, v_hat, omega_r_meas, theta_meas) -
        params.gear_ratio * tau_g_meas;

    EstimatorState next = est;
    next.xi = est.xi - dt * (est.gamma / params.inertia) * torque_mismatch;
    next.v_hat = std::max(kVhatFloor, next.xi + est.gamma * omega_r_meas);
    require_finite(next.v_hat, "estimator v_hat");
    return next;
}

double thrust_estimate(const TurbineParams& params, const AeroSurface& surface, double v_hat,
                       double omega_r_meas, double theta_meas) {
    require(v_hat > 0.0, "thrust_estimate v_hat must be > 0");
    require(omega_r_meas > 0.0, "thrust_estimate omega_r_meas must be > 0");
    const double lambda = params.radius * omega_r_meas / v_hat;
    return 0.5 * params.rho * params.swept_area() * v_hat * v_hat *
           ct(surface, lambda, theta_meas);
}

}  // namespace thrustgov
