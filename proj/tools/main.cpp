#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thrustgov/common.hpp"
#include "thrustgov/harness.hpp"
#include "thrustgov/scenario.hpp"
#include "thrustgov/sysid.hpp"

namespace {

using namespace thrustgov;

double parse_thrust_ref(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF")
        return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

void print_loop_report(const LoopAnalysis& report) {
    if (!report.stable) {
        std::printf("UNSTABLE closed loop: poles %.6g%+.6gi, %.6g%+.6gi\n",
                    report.poles[0].real(), report.poles[0].imag(), report.poles[1].real(),
                    report.poles[1].imag());
        return;
    }
    std::printf("closed-loop poles     : %.6g%+.6gi, %.6g%+.6gi\n", report.poles[0].real(),
                report.poles[0].imag(), report.poles[1].real(), report.poles[1].imag());
    if (report.gain_margin_infinite)
        std::printf("gain margin           : infinite\n");
    else
        std::printf("gain margin           : %.4g dB\n", report.gain_margin_db);
    std::printf("phase margin          : %.4g deg at %.4g Hz\n", report.phase_margin_deg,
                report.phase_crossover_hz);
    std::printf("|L| = +20 dB crossover: %.4g Hz\n", report.crossover_plus20db_hz);
    std::printf("|L| = -20 dB crossover: %.4g Hz\n", report.crossover_minus20db_hz);
    std::printf("T(0)                  : %.6g\n", report.t0);
    std::printf("e_ss [F_ref, P_ref, v, bias]: [%g, %g, %g, %g]\n", report.e_ss[0],
                report.e_ss[1], report.e_ss[2], report.e_ss[3]);
}

void write_loop_csv(const LoopAnalysis& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write analysis csv: " + path);
    out << "freq_hz,l_mag_db,l_phase_deg,s_mag_db,t_mag_db\n";
    char buf[200];
    for (const LoopPoint& p : report.points) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g\n", p.freq_hz,
                      20.0 * std::log10(p.l_mag), p.l_phase_deg, 20.0 * std::log10(p.s_mag),
                      20.0 * std::log10(p.t_mag));
        out << buf;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thrustgov: wind turbine thrust-limiting control simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--out-dir", out_dir, "output directory (default .)");
    app.add_option("--seed", seed, "override the scenario seed")
        ->each([&seed_given](const std::string&) { seed_given = true; });

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run one closed-loop scenario");
    std::string sim_scenario_path;
    bool disable_governor = false;
    bool force_svg = false;
    sim_cmd->add_option("scenario", sim_scenario_path, "scenario JSON file")->required();
    sim_cmd->add_flag("--disable-governor", disable_governor, "run with the governor off");
    sim_cmd->add_flag("--svg", force_svg, "also write SVG plots");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "thrust-reference sweep with shared baseline");
    std::string sweep_scenario_path;
    std::vector<std::string> ref_strings;
    sweep_cmd->add_option("scenario", sweep_scenario_path, "scenario JSON file")->required();
    sweep_cmd
        ->add_option("--thrust-refs", ref_strings,
                     "thrust references in N ('inf' for the no-bound sentinel)")
        ->required()
        ->delimiter(',');

    // tune
    auto* tune_cmd = app.add_subcommand("tune", "PI pole placement for a first-order model");
    double tune_a = kReferencePlantGain, tune_b = kReferencePlantPole;
    double tune_zeta = 0.7, tune_kp = 0.0;
    tune_cmd->add_option("--a", tune_a, "plant gain, N/(W s)")->required();
    tune_cmd->add_option("--b", tune_b, "plant pole, 1/s")->required();
    tune_cmd->add_option("--zeta", tune_zeta, "target damping ratio")->required();
    tune_cmd->add_option("--kp", tune_kp, "proportional gain, W/N (default 0)");

    // analyze
    auto* ana_cmd = app.add_subcommand("analyze", "frequency-domain loop report");
    double ana_a = kReferencePlantGain, ana_b = kReferencePlantPole;
    double ana_kp = 0.0, ana_ki = 2.947;
    double ana_fmin = 1e-4, ana_fmax = 10.0;
    std::size_t ana_points = 400;
    std::string ana_csv;
    ana_cmd->add_option("--a", ana_a, "plant gain, N/(W s)")->required();
    ana_cmd->add_option("--b", ana_b, "plant pole, 1/s")->required();
    ana_cmd->add_option("--ki", ana_ki, "integral gain, W/(N s)")->required();
    ana_cmd->add_option("--kp", ana_kp, "proportional gain, W/N (default 0)");
    ana_cmd->add_option("--fmin", ana_fmin, "grid start, Hz");
    ana_cmd->add_option("--fmax", ana_fmax, "grid end, Hz");
    ana_cmd->add_option("--points", ana_points, "grid points");
    ana_cmd->add_option("--csv", ana_csv, "write (freq, |L|, phase, |S|, |T|) CSV here");

    // sysid
    auto* sysid_cmd = app.add_subcommand("sysid", "fit a first-order model to a step response");
    std::string sysid_csv;
    std::string residuals_csv;
    sysid_cmd->add_option("csv", sysid_csv, "CSV of t,p_dem,thrust")->required();
    sysid_cmd->add_option("--residuals", residuals_csv, "write fit residuals CSV here");

    // print-scenario
    auto* print_cmd =
        app.add_subcommand("print-scenario", "dump the tuned default scenario as JSON");

    // export-surface
    auto* surf_cmd =
        app.add_subcommand("export-surface", "write the default parametric Cp/Ct CSV pair");
    std::string surf_cp = "surface_cp.csv", surf_ct = "surface_ct.csv";
    surf_cmd->add_option("--cp", surf_cp, "Cp output path");
    surf_cmd->add_option("--ct", surf_ct, "Ct output path");

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);

        if (*sim_cmd) {
            Scenario scenario = load_scenario(sim_scenario_path);
            if (seed_given) scenario.seed = seed;
            if (disable_governor) scenario.governor_enabled = false;
            const SimLog log = run(scenario);
            const std::string log_path = out_dir + "/" + scenario.log_name;
            write_log_csv(log, log_path);
            if (scenario.emit_svg || force_svg)
                write_run_svg(log, scenario, out_dir + "/" + scenario.log_name + ".plot");
            const SimRecord& last = log.records.back();
            std::printf("wrote %s (%zu rows, seed %llu)\n", log_path.c_str(),
                        log.records.size(),
                        static_cast<unsigned long long>(log.seed));
            std::printf("final: P_gen = %.4g MW, F_hat = %.4g kN, F_true = %.4g kN, "
                        "mode = %s, governor %s\n",
                        last.p_gen / 1e6, last.f_hat / 1e3, last.f_true / 1e3,
                        last.reg_mode ? "downreg" : "conventional",
                        last.gov_active ? "active" : "inactive");
            if (log.wind_floor_hits || log.rotor_floor_hits)
                std::printf("warning: floor hits (wind %d, rotor %d)\n", log.wind_floor_hits,
                            log.rotor_floor_hits);
            return 0;
        }

        if (*sweep_cmd) {
            Scenario scenario = load_scenario(sweep_scenario_path);
            if (seed_given) scenario.seed = seed;
            std::vector<double> refs;
            refs.reserve(ref_strings.size());
            for (const auto& s : ref_strings) refs.push_back(parse_thrust_ref(s));
            const auto rows = sweep(scenario, refs);
            const std::string path = out_dir + "/sweep.csv";
            write_sweep_csv(rows, path);
            std::printf("%-14s %-12s %-14s %-12s\n", "F_ref [kN]", "thrust red %",
                        "max loss [MW]", "power red %");
            for (const auto& r : rows) {
                std::printf("%-14.6g %-12.4g %-14.4g %-12.4g\n", r.f_t_ref / 1e3,
                            r.summary.thrust_reduction_pct, r.summary.max_power_loss_w / 1e6,
                            r.summary.power_reduction_pct);
            }
            std::printf("wrote %s\n", path.c_str());
            return 0;
        }

        if (*tune_cmd) {
            const TuneResult res = tune_pi(PlantModel{tune_a, tune_b}, tune_zeta, tune_kp);
            std::printf("omega_n = %.6g rad/s\nK_I     = %.6g W/(N s)\nK_P     = %.6g W/N\n",
                        res.omega_n, res.ki, tune_kp);
            return 0;
        }

        if (*ana_cmd) {
            const LoopAnalysis report =
                loop_analysis(PlantModel{ana_a, ana_b}, ana_kp, ana_ki,
                              default_freq_grid(ana_fmin, ana_fmax, ana_points));
            print_loop_report(report);
            if (!ana_csv.empty()) {
                write_loop_csv(report, out_dir + "/" + ana_csv);
                std::printf("wrote %s/%s\n", out_dir.c_str(), ana_csv.c_str());
            }
            return report.stable ? 0 : 2;
        }

        if (*sysid_cmd) {
            const StepExperiment exp = load_step_csv(sysid_csv);
            const FitResult fit = fit_first_order(exp);
            std::printf("A = %.6g N/(W s)  (= %.6g kN/(MW s))\n", fit.model.a,
                        fit.model.a * 1e3);
            std::printf("B = %.6g 1/s\n", fit.model.b);
            std::printf("steady gain A/B = %.6g N/W, F0 = %.6g kN\n",
                        fit.model.a / fit.model.b, fit.f0 / 1e3);
            std::printf("residual RMS = %.6g N (%.3g%% of excursion)\n", fit.residual_rms,
                        100.0 * fit.residual_rms / fit.excursion);
            if (!residuals_csv.empty()) {
                const auto pred = predicted_response(exp, fit);
                std::ofstream out(out_dir + "/" + residuals_csv);
                if (!out) throw std::runtime_error("cannot write " + residuals_csv);
                out << "t_s,thrust_N,predicted_N,residual_N\n";
                for (std::size_t k = 0; k < pred.size(); ++k) {
                    const double t = static_cast<double>(k) * exp.dt;
                    out << t << ',' << exp.thrust_series[k] << ',' << pred[k] << ','
                        << exp.thrust_series[k] - pred[k] << '\n';
                }
                std::printf("wrote %s/%s\n", out_dir.c_str(), residuals_csv.c_str());
            }
            return 0;
        }

        if (*print_cmd) {
            std::fputs(scenario_to_json(default_scenario()).c_str(), stdout);
            return 0;
        }

        if (*surf_cmd) {
            const AeroSurface surface = parametric_surface();
            save_surface(surface, out_dir + "/" + surf_cp, out_dir + "/" + surf_ct);
            std::printf("wrote %s/%s and %s/%s\n", out_dir.c_str(), surf_cp.c_str(),
                        out_dir.c_str(), surf_ct.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
