#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thrustgov {

/// One logged instant. reg_mode: 0 conventional, 1 down-regulation.
struct SimRecord {
    double t;        // s
    double v_true;   // m/s
    double v_hat;    // m/s
    double omega_r;  // rad/s
    double theta;    // rad
    double tau_g;    // N m
    double p_ref;    // W
    double u;        // W
    double p_dem;    // W
    double p_gen;    // W
    double f_true;   // N
    double f_hat;    // N
    int reg_mode;
    int gov_active;

    bool operator==(const SimRecord&) const = default;
};

/// Complete run record. switch_closed mirrors the governor's loop-closure
/// state per logged step for chattering analysis; it is not a CSV column.
struct SimLog {
    double dt = 0.0;
    int log_every = 1;
    std::uint64_t seed = 0;
    std::vector<SimRecord> records;
    std::vector<std::uint8_t> switch_closed;
    int wind_floor_hits = 0;
    int rotor_floor_hits = 0;

    double logged_dt() const { return dt * log_every; }

    bool operator==(const SimLog& other) const {
        return records == other.records && dt == other.dt && log_every == other.log_every;
    }
};

/// Fixed-order CSV with unit-annotated header.
void write_log_csv(const SimLog& log, const std::string& path);
std::string log_csv_string(const SimLog& log);

}  // namespace thrustgov
