#include "thrustgov/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thrustgov/common.hpp"

namespace thrustgov {

void StepExperiment::validate() const {
    require(dt > 0.0, "experiment dt must be > 0");
    require(p_dem_before > 0.0 && p_dem_after > 0.0, "demanded powers must be > 0");
    require(step_time >= 0.0, "step_time must be >= 0");
    require(thrust_series.size() >= 20, "thrust series too short to fit");
    for (std::size_t i = 0; i < thrust_series.size(); ++i)
        require(is_finite(thrust_series[i]),
                "non-finite thrust sample at index " + std::to_string(i));
}

namespace {

struct LinearFit {
    double f0 = 0.0;
    double gain = 0.0;  // dP * a / b
    double sse = 0.0;
};

// Closed-form least squares of F ~ f0 + gain * (1 - exp(-b (t - t0)))+ for a
// fixed pole candidate b.
LinearFit fit_at_pole(const StepExperiment& exp, double b) {
    const std::size_t n = exp.thrust_series.size();
    double s_phi = 0.0, s_phi2 = 0.0, s_f = 0.0, s_fphi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * exp.dt;
        const double phi =
            t >= exp.step_time ? 1.0 - std::exp(-b * (t - exp.step_time)) : 0.0;
        const double f = exp.thrust_series[k];
        s_phi += phi;
        s_phi2 += phi * phi;
        s_f += f;
        s_fphi += f * phi;
    }
    const double nn = static_cast<double>(n);
    const double det = nn * s_phi2 - s_phi * s_phi;
    LinearFit fit;
    if (std::abs(det) < 1e-12) {
        fit.f0 = s_f / nn;
        fit.gain = 0.0;
    } else {
        fit.f0 = (s_f * s_phi2 - s_fphi * s_phi) / det;
        fit.gain = (nn * s_fphi - s_phi * s_f) / det;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * exp.dt;
        const double phi =
            t >= exp.step_time ? 1.0 - std::exp(-b * (t - exp.step_time)) : 0.0;
        const double r = exp.thrust_series[k] - (fit.f0 + fit.gain * phi);
        fit.sse += r * r;
    }
    return fit;
}

}  // namespace

FitResult fit_first_order(const StepExperiment& exp) {
    exp.validate();
    const double dp = exp.p_dem_after - exp.p_dem_before;
    if (dp == 0.0) throw std::runtime_error("sysid: zero power step, nothing to identify");
    require(exp.step_time < static_cast<double>(exp.thrust_series.size() - 10) * exp.dt,
            "step_time leaves too few post-step samples");

    const auto minmax =
        std::minmax_element(exp.thrust_series.begin(), exp.thrust_series.end());
    const double full_range = *minmax.second - *minmax.first;
    if (full_range <= 0.0)
        throw std::runtime_error("sysid: thrust series is constant, nothing to identify");

    // Settle gate: the two halves of the final 10% must agree to 2% of the
    // total excursion (half-means rather than raw extremes so measurement
    // noise does not mask a settled response).
    const std::size_t n = exp.thrust_series.size();
    const std::size_t tail = std::max<std::size_t>(4, n / 10);
    const std::size_t half = tail / 2;
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t k = n - tail; k < n - half; ++k) mean_a += exp.thrust_series[k];
    for (std::size_t k = n - half; k < n; ++k) mean_b += exp.thrust_series[k];
    mean_a /= static_cast<double>(tail - half);
    mean_b /= static_cast<double>(half);
    if (std::abs(mean_b - mean_a) > 0.02 * full_range)
        throw std::runtime_error(
            "sysid: series has not settled (tail drift " +
            std::to_string(std::abs(mean_b - mean_a)) + " N exceeds 2% of excursion " +
            std::to_string(full_range) + " N)");

    // Coarse log sweep over the pole, then golden-section refinement.
    const double b_lo = 1e-3, b_hi = 50.0;
    const int coarse = 80;
    double best_b = b_lo;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int i = 0; i < coarse; ++i) {
        const double b = b_lo * std::pow(b_hi / b_lo, static_cast<double>(i) / (coarse - 1));
        const double sse = fit_at_pole(exp, b).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_b = b;
        }
    }
    const double ratio = std::pow(b_hi / b_lo, 1.0 / (coarse - 1));
    double lo = best_b / ratio, hi = best_b * ratio;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = fit_at_pole(exp, x1).sse, f2 = fit_at_pole(exp, x2).sse;
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = fit_at_pole(exp, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = fit_at_pole(exp, x2).sse;
        }
    }
    const double b = 0.5 * (lo + hi);
    const LinearFit lin = fit_at_pole(exp, b);

    FitResult out;
    out.model.b = b;
    out.model.a = lin.gain * b / dp;
    out.f0 = lin.f0;
    out.excursion = std::abs(lin.gain);
    out.residual_rms = std::sqrt(lin.sse / static_cast<double>(n));
    if (!(out.model.a > 0.0 && out.model.b > 0.0))
        throw std::runtime_error("sysid: fit did not produce a positive-gain stable model (a=" +
                                 std::to_string(out.model.a) + ", b=" + std::to_string(b) + ")");
    return out;
}

std::vector<double> predicted_response(const StepExperiment& exp, const FitResult& fit) {
    std::vector<double> pred(exp.thrust_series.size());
    const double dp = exp.p_dem_after - exp.p_dem_before;
    for (std::size_t k = 0; k < pred.size(); ++k) {
        const double t = static_cast<double>(k) * exp.dt;
        const double phi =
            t >= exp.step_time ? 1.0 - std::exp(-fit.model.b * (t - exp.step_time)) : 0.0;
        pred[k] = fit.f0 + dp * (fit.model.a / fit.model.b) * phi;
    }
    return pred;
}

StepExperiment load_step_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open step csv: " + path);
    StepExperiment exp;
    std::vector<double> times, p_dem;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string a, bfield, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, bfield, ',') ||
            !std::getline(ss, c, ','))
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": expected t,p_dem,thrust");
        try {
            times.push_back(std::stod(a));
            p_dem.push_back(std::stod(bfield));
            exp.thrust_series.push_back(std::stod(c));
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header row
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": not numeric: '" + line + "'");
        }
    }
    if (times.size() < 2) throw std::runtime_error(path + ": too few rows");
    exp.dt = times[1] - times[0];
    require(exp.dt > 0.0, path + ": time column must increase");

    std::size_t step_idx = 0;
    for (std::size_t k = 1; k < p_dem.size(); ++k) {
        if (p_dem[k] != p_dem[0]) {
            step_idx = k;
            break;
        }
    }
    if (step_idx == 0)
        throw std::runtime_error(path + ": p_dem column never changes, no step to identify");
    exp.p_dem_before = p_dem[0];
    exp.p_dem_after = p_dem[step_idx];
    exp.step_time = static_cast<double>(step_idx) * exp.dt;
    return exp;
}

}  // namespace thrustgov
