#pragma once

#include <array>
#include <complex>
#include <limits>
#include <vector>

namespace thrustgov {

/// First-order demanded-power-to-thrust model F(s)/P(s) = a/(s + b).
/// Units: a in N/(W s) (numerically equal to kN/(kW s)), b in 1/s.
struct PlantModel {
    double a = 0.0;
    double b = 0.0;

    void validate() const;
};

/// Reference constants for the identified model reported with the original
/// down-regulated step experiment. The body text rounds the gain to 0.068;
/// the loop-analysis figure uses 0.067625, which is the value that
/// reproduces the published integral gain, so tuning checks use that one.
inline constexpr double kReferencePlantGainText = 0.068;    // N/(W s)
inline constexpr double kReferencePlantGain = 0.067625;     // N/(W s)
inline constexpr double kReferencePlantPole = 0.625;        // 1/s

enum class SwitchLaw {
    kIntegral,  // loop closed while e < 0 or the error integral is < 0
    kSign,      // loop closed only while e < 0 (chattering-comparison baseline)
};

/// Thrust-governor settings. The governor only ever lowers demanded power:
/// u is clamped to [0, min(u_max, p_ref - p_min)].
struct GovernorConfig {
    double f_t_ref = 0.0;  // thrust bound, N, > 0
    double kp = 0.0;       // W/N
    double ki = 0.0;       // W/(N s), > 0
    double u_max = std::numeric_limits<double>::infinity();  // W
    double p_min = 1.0e6;  // W, demanded-power floor the override must respect
    double thrust_ref_offset = 0.0;  // N, bias calibration
    SwitchLaw law = SwitchLaw::kIntegral;

    void validate() const;
};

struct GovernorState {
    double e_i = 0.0;   // integral of the thrust error while the loop is closed, N s
    double u = 0.0;     // current override, W
    bool active = false;        // e_tilde != 0 or u > 0
    bool switch_closed = false; // e_tilde != 0 (chattering metric counts this)
};

/// Switching signal: the error passes through when the bound is violated
/// (e < 0) or a violation is still being unwound (e_i < 0); zero otherwise.
double switch_error(double e, double e_i);

struct GovernorOutput {
    double p_dem;  // W
    GovernorState state;
};

/// One governor update: e = (f_t_ref + offset) - f_hat, integrate e while the
/// loop is closed (e_i clamped at zero from above when it opens), then
/// u = -(kp e_tilde + ki e_i) clamped to [0, cap] with conditional
/// integration, and p_dem = p_ref - u. With the bound never violated the
/// override stays exactly zero and p_dem == p_ref bit-for-bit.
GovernorOutput governor_update(const GovernorConfig& config, const GovernorState& state,
                               double f_hat, double p_ref, double dt);

/// Pole placement on s^2 + (b + kp a) s + ki a = s^2 + 2 zeta w_n s + w_n^2:
/// w_n = (b + kp a) / (2 zeta), ki = w_n^2 / a.
struct TuneResult {
    double omega_n;  // rad/s
    double ki;       // W/(N s)
};
TuneResult tune_pi(const PlantModel& model, double zeta, double kp);

struct LoopPoint {
    double freq_hz;
    double l_mag;
    double l_phase_deg;
    double s_mag;
    double t_mag;
};

/// Frequency-domain report for L = K G, S = 1/(1+L), T = L/(1+L).
struct LoopAnalysis {
    bool stable = false;
    std::array<std::complex<double>, 2> poles{};  // roots of 1 + K G = 0
    std::vector<LoopPoint> points;
    bool gain_margin_infinite = true;
    double gain_margin_db = std::numeric_limits<double>::infinity();
    double phase_margin_deg = 0.0;
    double phase_crossover_hz = 0.0;       // |L| = 1
    double crossover_plus20db_hz = 0.0;    // |L| = 10
    double crossover_minus20db_hz = 0.0;   // |L| = 0.1
    double t0 = 0.0;                       // complementary sensitivity at DC
    std::array<double, 4> e_ss{};  // steady errors for unit steps in
                                   // f_ref, p_ref path, wind path, estimation bias
};

/// Evaluate margins and sensitivity curves over the given frequency grid
/// (Hz, positive increasing). An unstable closed loop is reported, not
/// thrown: check `stable`.
LoopAnalysis loop_analysis(const PlantModel& model, double kp, double ki,
                           const std::vector<double>& freq_grid_hz);

/// Log-spaced default grid for analyze/plot output.
std::vector<double> default_freq_grid(double f_min_hz = 1e-4, double f_max_hz = 10.0,
                                      std::size_t points = 400);

}  // namespace thrustgov
