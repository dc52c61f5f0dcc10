#include "thrustgov/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>

#include "thrustgov/common.hpp"
#include "thrustgov/random.hpp"
#include "thrustgov/svgplot.hpp"

namespace thrustgov {

SimLog run(const Scenario& scenario) { return run(scenario, build_surface(scenario)); }

SimLog run(const Scenario& scenario, const AeroSurface& surface) {
    scenario.validate();
    const TurbineParams& params = scenario.turbine;

    RegulatorConfig reg_cfg = scenario.regulator;
    if (scenario.k_opt_auto) reg_cfg.k_opt = derive_k_opt(params, surface);
    reg_cfg.validate();

    WindSpec wind = scenario.wind;
    wind.seed = scenario.seed;
    const WindTrace trace = generate(wind, scenario.duration, scenario.dt);
    const PowerReference p_ref_signal = build_power_reference(scenario.power_reference);

    // Start on the conventional region-2 locus at the initial wind speed.
    const OptimalPoint opt = max_cp_point(surface);
    const double v0 = trace.at_step(0);
    TurbineState state;
    state.omega_r = std::clamp(opt.lambda * v0 / params.radius,
                               params.min_gen_speed / params.gear_ratio,
                               params.rated_gen_speed / params.gear_ratio);
    state.theta = reg_cfg.theta_fine;
    state.tau_g = reg_cfg.k_opt * state.omega_g(params) * state.omega_g(params);

    const double v_init = scenario.estimator.v_hat_init > 0.0
                              ? scenario.estimator.v_hat_init
                              : params.radius * state.omega_r / opt.lambda;
    EstimatorState est = init_estimator(scenario.estimator.gamma, v_init, state.omega_r);

    RegulatorState reg_state;
    reg_state.omega_g_ref = state.omega_g(params);
    GovernorState gov_state;

    GaussianSource noise_rng(scenario.seed + 0x9e3779b97f4a7c15ULL);
    const bool noisy = scenario.noise.any();

    const std::size_t n_steps =
        static_cast<std::size_t>(std::llround(scenario.duration / scenario.dt));
    SimLog log;
    log.dt = scenario.dt;
    log.log_every = scenario.log_every;
    log.seed = scenario.seed;
    log.records.reserve(n_steps / static_cast<std::size_t>(scenario.log_every) + 1);

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * scenario.dt;
        const double v = trace.at_step(k);
        try {
            double omega_meas = state.omega_r;
            double tau_meas = state.tau_g;
            double theta_meas = state.theta;
            if (noisy) {
                omega_meas += scenario.noise.omega_r_std * noise_rng.next();
                tau_meas += scenario.noise.tau_g_std * noise_rng.next();
                theta_meas += scenario.noise.theta_std * noise_rng.next();
                omega_meas = std::max(1e-3, omega_meas);
            }

            est = ii_update(est, params, surface, omega_meas, tau_meas, theta_meas,
                            scenario.dt);
            const double f_hat =
                thrust_estimate(params, surface, est.v_hat, omega_meas, theta_meas);

            const double p_ref = p_ref_signal.at(t);
            require(p_ref > 0.0, "power reference must stay > 0");
            double p_dem = p_ref;
            if (scenario.governor_enabled) {
                const GovernorOutput out =
                    governor_update(scenario.governor, gov_state, f_hat, p_ref, scenario.dt);
                gov_state = out.state;
                p_dem = out.p_dem;
            }

            const ActuatorCommands commands =
                regulator_step(reg_cfg, params, reg_state, p_dem,
                               params.gear_ratio * omega_meas, theta_meas, scenario.dt);

            if (k % static_cast<std::size_t>(scenario.log_every) == 0) {
                SimRecord r;
                r.t = t;
                r.v_true = v;
                r.v_hat = est.v_hat;
                r.omega_r = state.omega_r;
                r.theta = state.theta;
                r.tau_g = state.tau_g;
                r.p_ref = p_ref;
                r.u = gov_state.u;
                r.p_dem = p_dem;
                r.p_gen = generated_power(params, state);
                r.f_true = aero_thrust_true(params, surface, v, state.omega_r, state.theta);
                r.f_hat = f_hat;
                r.reg_mode = reg_state.mode == RegulatorMode::kDownReg ? 1 : 0;
                r.gov_active = gov_state.active ? 1 : 0;
                log.records.push_back(r);
                log.switch_closed.push_back(gov_state.switch_closed ? 1 : 0);
            }

            state = step(params, surface, state, commands, v, scenario.dt);
        } catch (const std::exception& e) {
            throw std::runtime_error("simulation aborted at step " + std::to_string(k) +
                                     " (t=" + std::to_string(t) + " s): " + e.what());
        }
    }
    log.wind_floor_hits = trace.floor_hits;
    log.rotor_floor_hits = state.floor_hits;
    return log;
}

namespace {

std::size_t first_settled_index(const SimLog& log, double settle_time) {
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        if (log.records[i].t >= settle_time) return i;
    }
    throw std::invalid_argument("settle window leaves no samples");
}

}  // namespace

RunMetrics metrics(const SimLog& log, const SimLog& baseline, double settle_time) {
    require(log.dt == baseline.dt && log.log_every == baseline.log_every &&
                log.records.size() == baseline.records.size(),
            "metrics: logs are not aligned");
    const std::size_t i0 = first_settled_index(log, settle_time);

    RunMetrics m;
    double max_f_base = 0.0, max_f_con = 0.0;
    double sum_f = 0.0, sum_p = 0.0;
    for (std::size_t i = i0; i < log.records.size(); ++i) {
        const SimRecord& c = log.records[i];
        const SimRecord& b = baseline.records[i];
        max_f_base = std::max(max_f_base, b.f_hat);
        max_f_con = std::max(max_f_con, c.f_hat);
        const double loss = b.p_gen - c.p_gen;
        m.max_power_loss_w = std::max(m.max_power_loss_w, loss);
        if (b.p_gen > 0.0)
            m.power_reduction_pct = std::max(m.power_reduction_pct, 100.0 * loss / b.p_gen);
        sum_f += c.f_hat;
        sum_p += c.p_gen;
    }
    const double n = static_cast<double>(log.records.size() - i0);
    m.thrust_reduction_pct =
        max_f_base > 0.0 ? 100.0 * (max_f_base - max_f_con) / max_f_base : 0.0;
    m.mean_f_hat = sum_f / n;
    m.mean_p_gen = sum_p / n;
    return m;
}

double switch_transitions_per_100s(const SimLog& log, double settle_time) {
    const std::size_t i0 = first_settled_index(log, settle_time);
    require(log.switch_closed.size() == log.records.size(), "log lacks switch-state trace");
    std::size_t count = 0;
    for (std::size_t i = i0 + 1; i < log.switch_closed.size(); ++i) {
        if (log.switch_closed[i] != log.switch_closed[i - 1]) ++count;
    }
    const double window_s =
        static_cast<double>(log.switch_closed.size() - 1 - i0) * log.logged_dt();
    require(window_s > 0.0, "settled window is empty");
    return static_cast<double>(count) * 100.0 / window_s;
}

std::vector<SweepRow> sweep(const Scenario& base, const std::vector<double>& thrust_refs) {
    require(!thrust_refs.empty(), "sweep needs at least one thrust reference");
    const AeroSurface surface = build_surface(base);

    Scenario baseline_scenario = base;
    baseline_scenario.governor_enabled = false;
    const SimLog baseline = run(baseline_scenario, surface);

    std::vector<std::future<SimLog>> futures;
    futures.reserve(thrust_refs.size());
    for (double ref : thrust_refs) {
        Scenario constrained = base;
        constrained.governor_enabled = true;
        constrained.governor.f_t_ref = ref;
        futures.push_back(std::async(std::launch::async, [constrained, &surface]() {
            return run(constrained, surface);
        }));
    }

    std::vector<SweepRow> rows;
    rows.reserve(thrust_refs.size());
    for (std::size_t i = 0; i < thrust_refs.size(); ++i) {
        const SimLog log = futures[i].get();
        RunMetrics m = metrics(log, baseline, base.settle_time);
        m.f_t_ref = thrust_refs[i];
        rows.push_back(SweepRow{thrust_refs[i], m});
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sweep csv: " + path);
    out << "f_t_ref_N,thrust_reduction_pct,max_power_loss_W,power_reduction_pct,mean_f_hat_N,"
           "mean_p_gen_W\n";
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", r.f_t_ref,
                      r.summary.thrust_reduction_pct, r.summary.max_power_loss_w,
                      r.summary.power_reduction_pct, r.summary.mean_f_hat,
                      r.summary.mean_p_gen);
        out << buf;
    }
}

void write_run_svg(const SimLog& log, const Scenario& scenario,
                   const std::string& path_prefix) {
    SvgChart power;
    power.title = "Power";
    power.x_label = "time [s]";
    power.y_label = "power [MW]";
    power.series.resize(3);
    power.series[0].label = "P_ref";
    power.series[1].label = "P_dem";
    power.series[2].label = "P_gen";
    SvgChart thrust;
    thrust.title = "Thrust";
    thrust.x_label = "time [s]";
    thrust.y_label = "thrust [kN]";
    thrust.series.resize(2);
    thrust.series[0].label = "F_true";
    thrust.series[1].label = "F_hat";
    for (const SimRecord& r : log.records) {
        power.series[0].points.emplace_back(r.t, r.p_ref / 1e6);
        power.series[1].points.emplace_back(r.t, r.p_dem / 1e6);
        power.series[2].points.emplace_back(r.t, r.p_gen / 1e6);
        thrust.series[0].points.emplace_back(r.t, r.f_true / 1e3);
        thrust.series[1].points.emplace_back(r.t, r.f_hat / 1e3);
    }
    if (scenario.governor_enabled) {
        thrust.hline = scenario.governor.f_t_ref / 1e3;
        thrust.hline_label = "F_T bound";
    }
    write_svg_chart(power, path_prefix + "_power.svg");
    write_svg_chart(thrust, path_prefix + "_thrust.svg");
}

}  // namespace thrustgov
