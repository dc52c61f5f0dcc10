#pragma once

#include "thrustgov/aero.hpp"
#include "thrustgov/turbine.hpp"

namespace thrustgov {

/// Immersion-and-invariance rotor-effective wind speed estimator:
///   v_hat = xi + gamma * omega_r
///   dxi/dt = -(gamma / J) * (tau_a(v_hat, omega_r, theta) - N * tau_g)
/// Monotonicity of the aerodynamic torque in wind speed makes the update a
/// contraction toward the true speed.
struct EstimatorState {
    double xi = 0.0;     // internal state, m/s-equivalent
    double v_hat = 0.0;  // estimated wind speed, m/s
    double gamma = 20.0; // estimator gain, m/s per rad/s, > 0

    void validate() const;
};

/// Initialize on the invariant manifold so v_hat starts at v_init.
EstimatorState init_estimator(double gamma, double v_init, double omega_r);

/// One Euler update from the current measurements. v_hat is floored at
/// 0.5 m/s. Non-finite measurements throw.
EstimatorState ii_update(const EstimatorState& est, const TurbineParams& params,
                         const AeroSurface& surface, double omega_r_meas, double tau_g_meas,
                         double theta_meas, double dt);

/// Estimated fore-aft thrust 0.5 rho pi R^2 v_hat^2 Ct(R omega/v_hat, theta).
double thrust_estimate(const TurbineParams& params, const AeroSurface& surface, double v_hat,
                       double omega_r_meas, double theta_meas);

}  // namespace thrustgov
