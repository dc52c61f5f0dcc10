#include "thrustgov/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thrustgov/common.hpp"

namespace thrustgov {

using nlohmann::json;

double PowerReference::at(double t) const {
    if (points.empty()) throw std::runtime_error("power reference has no points");
    if (t <= points.front().first) return points.front().second;
    if (t >= points.back().first) return points.back().second;
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

void Scenario::validate() const {
    require(schema_version == kScenarioSchemaVersion,
            "unsupported schema_version " + std::to_string(schema_version));
    require(duration > 0.0, "duration must be > 0");
    require(dt > 0.0, "dt must be > 0");
    require(log_every >= 1, "log_every must be >= 1");
    require(duration > settle_time, "duration must exceed the settle window");
    turbine.validate();
    wind.validate();
    regulator.validate();
    require(estimator.gamma > 0.0, "estimator gamma must be > 0");
    if (governor_enabled) governor.validate();
    switch (power_reference.kind) {
        case PowerRefKind::kConstant:
            require(power_reference.constant_w > 0.0, "power reference must be > 0");
            break;
        case PowerRefKind::kSchedule:
            require(!power_reference.schedule.empty(), "power schedule is empty");
            for (const auto& [t, w] : power_reference.schedule)
                require(w > 0.0, "power schedule values must be > 0");
            break;
        case PowerRefKind::kProfileFile:
            require(!power_reference.profile_path.empty(), "profile_path is empty");
            require(power_reference.scale_min_w > 0.0 &&
                        power_reference.scale_max_w > power_reference.scale_min_w,
                    "profile scale band must satisfy 0 < min < max");
            break;
    }
    if (surface_source == SurfaceSource::kFile)
        require(!surface_cp_path.empty(), "surface cp path is empty");
}

Scenario default_scenario() {
    Scenario s;
    s.wind.kind = WindKind::kConstant;
    s.wind.mean_speed = 9.0;
    s.power_reference.kind = PowerRefKind::kConstant;
    s.power_reference.constant_w = 4.0e6;
    // Governor gains tuned once on this plant: identified first-order model
    // of the shipped surface/turbine at 9 m/s (see README), zeta = 0.7, kp = 0.
    s.governor.f_t_ref = 6.1e5;
    s.governor.kp = 0.0;
    s.governor.ki = 0.55;
    s.estimator.gamma = 20.0;
    return s;
}

AeroSurface build_surface(const Scenario& scenario) {
    if (scenario.surface_source == SurfaceSource::kParametric)
        return parametric_surface(scenario.surface_coeffs);
    if (scenario.surface_ct_path.empty()) return load_surface(scenario.surface_cp_path);
    return load_surface(scenario.surface_cp_path, scenario.surface_ct_path);
}

namespace {

std::vector<std::pair<double, double>> load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file: " + path);
    std::vector<std::pair<double, double>> points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": expected t,value");
        double t = 0.0, v = 0.0;
        try {
            t = std::stod(a);
            v = std::stod(b);
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": not numeric: '" + line + "'");
        }
        if (v < 0.0 || v > 1.0)
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": normalized value outside [0, 1]");
        if (!points.empty() && t <= points.back().first)
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": time must strictly increase");
        points.emplace_back(t, v);
    }
    if (points.size() < 2) throw std::runtime_error(path + ": need at least 2 profile points");
    return points;
}

}  // namespace

PowerReference build_power_reference(const PowerReferenceSpec& spec) {
    PowerReference ref;
    switch (spec.kind) {
        case PowerRefKind::kConstant:
            ref.points = {{0.0, spec.constant_w}};
            break;
        case PowerRefKind::kSchedule:
            ref.points = spec.schedule;
            break;
        case PowerRefKind::kProfileFile: {
            for (const auto& [t, v] : load_profile(spec.profile_path)) {
                ref.points.emplace_back(
                    t, spec.scale_min_w + v * (spec.scale_max_w - spec.scale_min_w));
            }
            break;
        }
    }
    return ref;
}

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&key](const char* k) { return key == k; }) == allowed.end())
            throw std::runtime_error("scenario: unknown key '" + key + "' in " + where);
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": JSON parse error: " + e.what());
    }

    Scenario s = default_scenario();
    check_keys(j, "scenario",
               {"schema_version", "duration_s", "dt_s", "log_every", "settle_time_s", "seed",
                "turbine", "surface", "wind", "power_reference", "governor", "estimator",
                "regulator", "noise", "output"});
    s.schema_version = static_cast<int>(get_num(j, "schema_version", kScenarioSchemaVersion));
    s.duration = get_num(j, "duration_s", s.duration);
    s.dt = get_num(j, "dt_s", s.dt);
    s.log_every = static_cast<int>(get_num(j, "log_every", s.log_every));
    s.settle_time = get_num(j, "settle_time_s", s.settle_time);
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("turbine")) {
        const json& t = j.at("turbine");
        check_keys(t, "turbine",
                   {"rho_kgpm3", "radius_m", "inertia_kgm2", "gear_ratio", "eta_eff",
                    "rated_power_w", "rated_gen_speed_radps", "min_gen_speed_radps",
                    "pitch_min_deg", "pitch_max_deg", "pitch_rate_limit_degps",
                    "torque_rate_limit_nmps"});
        s.turbine.rho = get_num(t, "rho_kgpm3", s.turbine.rho);
        s.turbine.radius = get_num(t, "radius_m", s.turbine.radius);
        s.turbine.inertia = get_num(t, "inertia_kgm2", s.turbine.inertia);
        s.turbine.gear_ratio = get_num(t, "gear_ratio", s.turbine.gear_ratio);
        s.turbine.eta_eff = get_num(t, "eta_eff", s.turbine.eta_eff);
        s.turbine.rated_power = get_num(t, "rated_power_w", s.turbine.rated_power);
        s.turbine.rated_gen_speed =
            get_num(t, "rated_gen_speed_radps", s.turbine.rated_gen_speed);
        s.turbine.min_gen_speed = get_num(t, "min_gen_speed_radps", s.turbine.min_gen_speed);
        s.turbine.pitch_min = deg2rad(get_num(t, "pitch_min_deg", rad2deg(s.turbine.pitch_min)));
        s.turbine.pitch_max = deg2rad(get_num(t, "pitch_max_deg", rad2deg(s.turbine.pitch_max)));
        s.turbine.pitch_rate_limit =
            deg2rad(get_num(t, "pitch_rate_limit_degps", rad2deg(s.turbine.pitch_rate_limit)));
        s.turbine.torque_rate_limit =
            get_num(t, "torque_rate_limit_nmps", s.turbine.torque_rate_limit);
    }

    if (j.contains("surface")) {
        const json& f = j.at("surface");
        check_keys(f, "surface",
                   {"kind", "cp_path", "ct_path", "c1", "c2", "c3", "c4", "c5", "c6", "kt0",
                    "kt1"});
        const std::string kind = f.value("kind", "parametric");
        if (kind == "parametric") {
            s.surface_source = SurfaceSource::kParametric;
            s.surface_coeffs.c1 = get_num(f, "c1", s.surface_coeffs.c1);
            s.surface_coeffs.c2 = get_num(f, "c2", s.surface_coeffs.c2);
            s.surface_coeffs.c3 = get_num(f, "c3", s.surface_coeffs.c3);
            s.surface_coeffs.c4 = get_num(f, "c4", s.surface_coeffs.c4);
            s.surface_coeffs.c5 = get_num(f, "c5", s.surface_coeffs.c5);
            s.surface_coeffs.c6 = get_num(f, "c6", s.surface_coeffs.c6);
            s.surface_coeffs.kt0 = get_num(f, "kt0", s.surface_coeffs.kt0);
            s.surface_coeffs.kt1 = get_num(f, "kt1", s.surface_coeffs.kt1);
        } else if (kind == "file") {
            s.surface_source = SurfaceSource::kFile;
            s.surface_cp_path = f.value("cp_path", "");
            s.surface_ct_path = f.value("ct_path", "");
        } else {
            throw std::runtime_error("scenario: surface.kind must be 'parametric' or 'file'");
        }
    }

    if (j.contains("wind")) {
        const json& w = j.at("wind");
        check_keys(w, "wind",
                   {"kind", "mean_speed_mps", "turbulence_intensity", "correlation_time_s",
                    "steps"});
        const std::string kind = w.value("kind", "constant");
        if (kind == "constant")
            s.wind.kind = WindKind::kConstant;
        else if (kind == "steps")
            s.wind.kind = WindKind::kSteps;
        else if (kind == "turbulent")
            s.wind.kind = WindKind::kTurbulent;
        else
            throw std::runtime_error("scenario: wind.kind must be constant|steps|turbulent");
        s.wind.mean_speed = get_num(w, "mean_speed_mps", s.wind.mean_speed);
        s.wind.turbulence_intensity =
            get_num(w, "turbulence_intensity", s.wind.turbulence_intensity);
        s.wind.correlation_time = get_num(w, "correlation_time_s", s.wind.correlation_time);
        if (w.contains("steps")) {
            for (const auto& e : w.at("steps"))
                s.wind.step_schedule.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    s.wind.seed = s.seed;

    if (j.contains("power_reference")) {
        const json& p = j.at("power_reference");
        check_keys(p, "power_reference",
                   {"kind", "constant_w", "schedule", "profile_path", "scale_min_w",
                    "scale_max_w"});
        const std::string kind = p.value("kind", "constant");
        if (kind == "constant")
            s.power_reference.kind = PowerRefKind::kConstant;
        else if (kind == "schedule")
            s.power_reference.kind = PowerRefKind::kSchedule;
        else if (kind == "profile_file")
            s.power_reference.kind = PowerRefKind::kProfileFile;
        else
            throw std::runtime_error(
                "scenario: power_reference.kind must be constant|schedule|profile_file");
        s.power_reference.constant_w = get_num(p, "constant_w", s.power_reference.constant_w);
        if (p.contains("schedule")) {
            for (const auto& e : p.at("schedule"))
                s.power_reference.schedule.emplace_back(e.at(0).get<double>(),
                                                        e.at(1).get<double>());
        }
        s.power_reference.profile_path = p.value("profile_path", "");
        s.power_reference.scale_min_w = get_num(p, "scale_min_w", s.power_reference.scale_min_w);
        s.power_reference.scale_max_w = get_num(p, "scale_max_w", s.power_reference.scale_max_w);
    }

    if (j.contains("governor")) {
        const json& g = j.at("governor");
        check_keys(g, "governor",
                   {"enabled", "f_t_ref_n", "kp_w_per_n", "ki_w_per_ns", "u_max_w", "p_min_w",
                    "thrust_ref_offset_n", "switch_law"});
        s.governor_enabled = g.value("enabled", false);
        s.governor.f_t_ref = get_num(g, "f_t_ref_n", s.governor.f_t_ref);
        s.governor.kp = get_num(g, "kp_w_per_n", s.governor.kp);
        s.governor.ki = get_num(g, "ki_w_per_ns", s.governor.ki);
        s.governor.u_max = get_num(g, "u_max_w", s.governor.u_max);
        s.governor.p_min = get_num(g, "p_min_w", s.governor.p_min);
        s.governor.thrust_ref_offset =
            get_num(g, "thrust_ref_offset_n", s.governor.thrust_ref_offset);
        const std::string law = g.value("switch_law", "integral");
        if (law == "integral")
            s.governor.law = SwitchLaw::kIntegral;
        else if (law == "sign")
            s.governor.law = SwitchLaw::kSign;
        else
            throw std::runtime_error("scenario: governor.switch_law must be integral|sign");
    }

    if (j.contains("estimator")) {
        const json& e = j.at("estimator");
        check_keys(e, "estimator", {"gamma", "v_hat_init_mps"});
        s.estimator.gamma = get_num(e, "gamma", s.estimator.gamma);
        s.estimator.v_hat_init = get_num(e, "v_hat_init_mps", s.estimator.v_hat_init);
    }

    if (j.contains("regulator")) {
        const json& r = j.at("regulator");
        check_keys(r, "regulator",
                   {"kp0", "ki0", "theta_k_deg", "k_opt", "theta_switch_deg", "theta_fine_deg",
                    "noise"});
        s.regulator.kp0 = get_num(r, "kp0", s.regulator.kp0);
        s.regulator.ki0 = get_num(r, "ki0", s.regulator.ki0);
        s.regulator.theta_k = deg2rad(get_num(r, "theta_k_deg", rad2deg(s.regulator.theta_k)));
        if (r.contains("k_opt")) {
            s.regulator.k_opt = r.at("k_opt").get<double>();
            s.k_opt_auto = false;
        }
        s.regulator.theta_switch =
            deg2rad(get_num(r, "theta_switch_deg", rad2deg(s.regulator.theta_switch)));
        s.regulator.theta_fine =
            deg2rad(get_num(r, "theta_fine_deg", rad2deg(s.regulator.theta_fine)));
    }

    if (j.contains("noise")) {
        const json& n = j.at("noise");
        check_keys(n, "noise", {"omega_r_std_radps", "tau_g_std_nm", "theta_std_rad"});
        s.noise.omega_r_std = get_num(n, "omega_r_std_radps", 0.0);
        s.noise.tau_g_std = get_num(n, "tau_g_std_nm", 0.0);
        s.noise.theta_std = get_num(n, "theta_std_rad", 0.0);
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "output", {"out_dir", "log_name", "emit_svg"});
        s.out_dir = o.value("out_dir", s.out_dir);
        s.log_name = o.value("log_name", s.log_name);
        s.emit_svg = o.value("emit_svg", s.emit_svg);
    }

    s.validate();
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["duration_s"] = s.duration;
    j["dt_s"] = s.dt;
    j["log_every"] = s.log_every;
    j["settle_time_s"] = s.settle_time;
    j["seed"] = s.seed;

    j["turbine"] = {{"rho_kgpm3", s.turbine.rho},
                    {"radius_m", s.turbine.radius},
                    {"inertia_kgm2", s.turbine.inertia},
                    {"gear_ratio", s.turbine.gear_ratio},
                    {"eta_eff", s.turbine.eta_eff},
                    {"rated_power_w", s.turbine.rated_power},
                    {"rated_gen_speed_radps", s.turbine.rated_gen_speed},
                    {"min_gen_speed_radps", s.turbine.min_gen_speed},
                    {"pitch_min_deg", rad2deg(s.turbine.pitch_min)},
                    {"pitch_max_deg", rad2deg(s.turbine.pitch_max)},
                    {"pitch_rate_limit_degps", rad2deg(s.turbine.pitch_rate_limit)},
                    {"torque_rate_limit_nmps", s.turbine.torque_rate_limit}};

    if (s.surface_source == SurfaceSource::kParametric) {
        j["surface"] = {{"kind", "parametric"},   {"c1", s.surface_coeffs.c1},
                        {"c2", s.surface_coeffs.c2}, {"c3", s.surface_coeffs.c3},
                        {"c4", s.surface_coeffs.c4}, {"c5", s.surface_coeffs.c5},
                        {"c6", s.surface_coeffs.c6}, {"kt0", s.surface_coeffs.kt0},
                        {"kt1", s.surface_coeffs.kt1}};
    } else {
        j["surface"] = {{"kind", "file"},
                        {"cp_path", s.surface_cp_path},
                        {"ct_path", s.surface_ct_path}};
    }

    json wind = {{"mean_speed_mps", s.wind.mean_speed},
                 {"turbulence_intensity", s.wind.turbulence_intensity},
                 {"correlation_time_s", s.wind.correlation_time}};
    switch (s.wind.kind) {
        case WindKind::kConstant: wind["kind"] = "constant"; break;
        case WindKind::kSteps: wind["kind"] = "steps"; break;
        case WindKind::kTurbulent: wind["kind"] = "turbulent"; break;
    }
    if (!s.wind.step_schedule.empty()) {
        json steps = json::array();
        for (const auto& [t, v] : s.wind.step_schedule) steps.push_back({t, v});
        wind["steps"] = steps;
    }
    j["wind"] = wind;

    json pr;
    switch (s.power_reference.kind) {
        case PowerRefKind::kConstant:
            pr = {{"kind", "constant"}, {"constant_w", s.power_reference.constant_w}};
            break;
        case PowerRefKind::kSchedule: {
            json sched = json::array();
            for (const auto& [t, w] : s.power_reference.schedule) sched.push_back({t, w});
            pr = {{"kind", "schedule"}, {"schedule", sched}};
            break;
        }
        case PowerRefKind::kProfileFile:
            pr = {{"kind", "profile_file"},
                  {"profile_path", s.power_reference.profile_path},
                  {"scale_min_w", s.power_reference.scale_min_w},
                  {"scale_max_w", s.power_reference.scale_max_w}};
            break;
    }
    j["power_reference"] = pr;

    json gov = {{"enabled", s.governor_enabled},
                {"f_t_ref_n", s.governor.f_t_ref},
                {"kp_w_per_n", s.governor.kp},
                {"ki_w_per_ns", s.governor.ki},
                {"p_min_w", s.governor.p_min},
                {"thrust_ref_offset_n", s.governor.thrust_ref_offset},
                {"switch_law", s.governor.law == SwitchLaw::kIntegral ? "integral" : "sign"}};
    if (std::isfinite(s.governor.u_max)) gov["u_max_w"] = s.governor.u_max;
    j["governor"] = gov;

    j["estimator"] = {{"gamma", s.estimator.gamma}};
    if (s.estimator.v_hat_init > 0.0) j["estimator"]["v_hat_init_mps"] = s.estimator.v_hat_init;

    j["regulator"] = {{"kp0", s.regulator.kp0},
                      {"ki0", s.regulator.ki0},
                      {"theta_k_deg", rad2deg(s.regulator.theta_k)},
                      {"theta_switch_deg", rad2deg(s.regulator.theta_switch)},
                      {"theta_fine_deg", rad2deg(s.regulator.theta_fine)}};
    if (!s.k_opt_auto) j["regulator"]["k_opt"] = s.regulator.k_opt;

    if (s.noise.any()) {
        j["noise"] = {{"omega_r_std_radps", s.noise.omega_r_std},
                      {"tau_g_std_nm", s.noise.tau_g_std},
                      {"theta_std_rad", s.noise.theta_std}};
    }

    j["output"] = {{"out_dir", s.out_dir}, {"log_name", s.log_name}, {"emit_svg", s.emit_svg}};
    return j.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json(scenario);
}

}  // namespace thrustgov
