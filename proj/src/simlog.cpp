#include "thrustgov/simlog.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "thrustgov/common.hpp"

namespace thrustgov {

namespace {
constexpr const char* kHeader =
    "t_s,v_true_mps,v_hat_mps,omega_r_radps,theta_rad,tau_g_Nm,p_ref_W,u_W,p_dem_W,p_gen_W,"
    "f_true_N,f_hat_N,reg_mode,gov_active";
}

std::string log_csv_string(const SimLog& log) {
    std::ostringstream out;
    out << kHeader << '\n';
    char buf[420];
    for (const SimRecord& r : log.records) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%d,%d\n",
                      r.t, r.v_true, r.v_hat, r.omega_r, r.theta, r.tau_g, r.p_ref, r.u, r.p_dem,
                      r.p_gen, r.f_true, r.f_hat, r.reg_mode, r.gov_active);
        out << buf;
    }
    return out.str();
}

void write_log_csv(const SimLog& log, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write log csv: " + path);
    out << log_csv_string(log);
}

}  // namespace thrustgov
