#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace thrustgov {

/// Tabulated rotor conversion-efficiency surfaces Cp(lambda, theta) and
/// Ct(lambda, theta). lambda is tip-speed ratio, theta is collective blade
/// pitch in radians. Tables are row-major [lambda][theta]. Immutable once
/// built; safe to share across concurrent simulations.
struct AeroSurface {
    std::vector<double> lambda_grid;  // strictly increasing, >= 2 points
    std::vector<double> theta_grid;   // rad, strictly increasing, >= 2 points
    std::vector<double> cp_table;     // |lambda| x |theta|, in [0, 0.593]
    std::vector<double> ct_table;     // |lambda| x |theta|, in [0, 2]

    std::size_t n_lambda() const { return lambda_grid.size(); }
    std::size_t n_theta() const { return theta_grid.size(); }
    double cp_at(std::size_t i, std::size_t j) const { return cp_table[i * n_theta() + j]; }
    double ct_at(std::size_t i, std::size_t j) const { return ct_table[i * n_theta() + j]; }

    // Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

/// Power coefficient, clamped bilinear interpolation. Queries outside the
/// grids use the nearest edge value; total in (lambda, theta).
double cp(const AeroSurface& surface, double lambda, double theta);

/// Thrust coefficient, same interpolation contract as cp().
double ct(const AeroSurface& surface, double lambda, double theta);

/// Coefficients of the analytic stand-in surface. The Cp family is the
/// classic exponential model
///   Cp = c1*(c2/li - c3*th_deg - c4)*exp(-c5/li) + c6*lambda,
///   1/li = 1/(lambda + 0.08*th_deg) - 0.035/(1 + th_deg^3),
/// with pitch in degrees inside the formula. Ct = Cp * (kt0 + kt1*lambda),
/// post-processed to be non-increasing in pitch at fixed lambda.
struct ParametricCoeffs {
    double c1 = 0.5176;
    double c2 = 116.0;
    double c3 = 0.4;
    double c4 = 5.0;
    double c5 = 21.0;
    double c6 = 0.0068;
    double kt0 = 0.489;
    double kt1 = 0.142;
};

/// Sample the parametric model on the default grids: lambda in [1, 15] step
/// 0.25, theta in [0, 25] deg step 0.5 deg (stored in rad). Rejects
/// coefficient sets whose peak Cp exceeds the Betz limit or is nonpositive.
AeroSurface parametric_surface(const ParametricCoeffs& coeffs = {});

/// Grid point maximizing Cp at the first theta grid value (fine pitch).
struct OptimalPoint {
    double lambda;
    double cp;
};
OptimalPoint max_cp_point(const AeroSurface& surface);

/// Grid point minimizing Ct subject to Cp >= cp_required (analysis only,
/// not used in the control loop). Empty when no grid point is feasible.
struct MinCtPoint {
    double lambda;
    double theta;  // rad
    double ct;
    double cp;
};
std::optional<MinCtPoint> min_ct_locus(const AeroSurface& surface, double cp_required);

/// Load a surface from the documented CSV pair. `cp_path` names the Cp file;
/// the Ct file is the sibling with the last "cp" in the filename replaced by
/// "ct". First row is `lambda\theta` followed by pitch values in degrees,
/// each following row is lambda followed by coefficients.
AeroSurface load_surface(const std::string& cp_path);
AeroSurface load_surface(const std::string& cp_path, const std::string& ct_path);

/// Write the CSV pair read back by load_surface().
void save_surface(const AeroSurface& surface, const std::string& cp_path,
                  const std::string& ct_path);

}  // namespace thrustgov
