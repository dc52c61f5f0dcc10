#include "thrustgov/governor.hpp"

#include <algorithm>
#include <cmath>

#include "thrustgov/common.hpp"

namespace thrustgov {

void PlantModel::validate() const {
    require(a > 0.0, "plant gain a must be > 0");
    require(b > 0.0, "plant pole b must be > 0");
}

void GovernorConfig::validate() const {
    require(f_t_ref > 0.0, "governor thrust bound must be > 0");
    require(ki > 0.0, "governor ki must be > 0");
    require(kp >= 0.0, "governor kp must be >= 0");
    require(u_max >= 0.0, "governor u_max must be >= 0");
    require(p_min > 0.0, "governor p_min must be > 0");
}

double switch_error(double e, double e_i) { return (e < 0.0 || e_i < 0.0) ? e : 0.0; }

GovernorOutput governor_update(const GovernorConfig& config, const GovernorState& state,
                               double f_hat, double p_ref, double dt) {
    config.validate();
    require(dt > 0.0, "dt must be > 0");
    require_finite(f_hat, "governor f_hat");
    require_finite(p_ref, "governor p_ref");
    require_finite(state.e_i, "governor e_i");

    const double e = (config.f_t_ref + config.thrust_ref_offset) - f_hat;
    const double e_tilde =
        config.law == SwitchLaw::kIntegral ? switch_error(e, state.e_i) : (e < 0.0 ? e : 0.0);

    // Integrate the error only while the loop is closed. The integral is
    // clamped at zero from above: positive margin accumulated during safe
    // operation must not delay the next activation.
    double e_i = state.e_i;
    if (e_tilde != 0.0) {
        e_i += e * dt;
        if (config.law == SwitchLaw::kIntegral) e_i = std::min(0.0, e_i);
    }

    const double u_cap = std::min(config.u_max, std::max(0.0, p_ref - config.p_min));
    double u_raw = -(config.kp * e_tilde + config.ki * e_i);
    if (u_raw > u_cap && e < 0.0) {
        e_i = state.e_i;  // conditional integration: saturated and still pushing up
        u_raw = -(config.kp * e_tilde + config.ki * e_i);
    }
    const double u = saturate(u_raw, 0.0, u_cap);

    GovernorOutput out;
    out.state.e_i = e_i;
    out.state.u = u;
    out.state.switch_closed = e_tilde != 0.0;
    out.state.active = out.state.switch_closed || u > 0.0;
    out.p_dem = p_ref - u;
    require_finite(out.p_dem, "governor p_dem");
    return out;
}

TuneResult tune_pi(const PlantModel& model, double zeta, double kp) {
    model.validate();
    require(zeta > 0.0, "zeta must be > 0");
    require(kp >= 0.0, "kp must be >= 0");
    const double omega_n = (model.b + kp * model.a) / (2.0 * zeta);
    return TuneResult{omega_n, omega_n * omega_n / model.a};
}

namespace {

std::complex<double> loop_gain(const PlantModel& m, double kp, double ki, double omega) {
    const std::complex<double> s(0.0, omega);
    return (kp + ki / s) * (m.a / (s + m.b));
}

double loop_mag(const PlantModel& m, double kp, double ki, double omega) {
    return std::abs(loop_gain(m, kp, ki, omega));
}

// Unique omega with |L| = target; |L| is strictly decreasing for kp, ki >= 0.
double crossover_rads(const PlantModel& m, double kp, double ki, double target) {
    double lo = 1e-9, hi = 1.0;
    while (loop_mag(m, kp, ki, hi) > target && hi < 1e9) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (loop_mag(m, kp, ki, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> default_freq_grid(double f_min_hz, double f_max_hz, std::size_t points) {
    require(f_min_hz > 0.0 && f_max_hz > f_min_hz && points >= 2, "bad frequency grid spec");
    std::vector<double> grid(points);
    const double ratio = std::log(f_max_hz / f_min_hz);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = f_min_hz * std::exp(ratio * static_cast<double>(i) /
                                      static_cast<double>(points - 1));
    }
    return grid;
}

LoopAnalysis loop_analysis(const PlantModel& model, double kp, double ki,
                           const std::vector<double>& freq_grid_hz) {
    model.validate();
    require(!freq_grid_hz.empty(), "frequency grid is empty");
    for (std::size_t i = 0; i < freq_grid_hz.size(); ++i) {
        require(freq_grid_hz[i] > 0.0, "frequencies must be positive");
        if (i > 0) require(freq_grid_hz[i] > freq_grid_hz[i - 1], "frequency grid must increase");
    }

    LoopAnalysis out;

    // Closed-loop poles: s^2 + (b + kp a) s + ki a = 0.
    const double c1 = model.b + kp * model.a;
    const double c0 = ki * model.a;
    const std::complex<double> disc = std::sqrt(std::complex<double>(c1 * c1 - 4.0 * c0, 0.0));
    out.poles[0] = (-c1 + disc) / 2.0;
    out.poles[1] = (-c1 - disc) / 2.0;
    out.stable = out.poles[0].real() < 0.0 && out.poles[1].real() < 0.0;

    for (double f : freq_grid_hz) {
        const double w = 2.0 * kPi * f;
        const std::complex<double> l = loop_gain(model, kp, ki, w);
        const std::complex<double> s = 1.0 / (1.0 + l);
        out.points.push_back(LoopPoint{f, std::abs(l), rad2deg(std::arg(l)), std::abs(s),
                                       std::abs(l * s)});
    }

    if (!out.stable) return out;  // margins are meaningless for an unstable loop

    // Phase margin at the unity-gain crossover.
    const double wc = crossover_rads(model, kp, ki, 1.0);
    out.phase_crossover_hz = wc / (2.0 * kPi);
    out.phase_margin_deg = 180.0 + rad2deg(std::arg(loop_gain(model, kp, ki, wc)));
    out.crossover_plus20db_hz = crossover_rads(model, kp, ki, 10.0) / (2.0 * kPi);
    out.crossover_minus20db_hz = crossover_rads(model, kp, ki, 0.1) / (2.0 * kPi);

    // Gain margin: search for a -180 deg phase crossing. A PI over a stable
    // first-order lag stays above -180 for all finite frequencies, so the
    // margin is typically infinite; scan anyway.
    out.gain_margin_infinite = true;
    out.gain_margin_db = std::numeric_limits<double>::infinity();
    const auto scan = default_freq_grid(1e-6, 1e4, 2000);
    double prev_phase = rad2deg(std::arg(loop_gain(model, kp, ki, 2.0 * kPi * scan.front())));
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double w = 2.0 * kPi * scan[i];
        const double phase = rad2deg(std::arg(loop_gain(model, kp, ki, w)));
        if ((prev_phase > -180.0) != (phase > -180.0)) {
            out.gain_margin_infinite = false;
            out.gain_margin_db = -20.0 * std::log10(loop_mag(model, kp, ki, w));
            break;
        }
        prev_phase = phase;
    }

    // With integral action T(0) = 1 exactly; steps in reference and both
    // disturbance paths are rejected and an estimation-bias step passes
    // through with sign flipped.
    out.t0 = 1.0;
    out.e_ss = {0.0, 0.0, 0.0, -out.t0};
    return out;
}

}  // namespace thrustgov
