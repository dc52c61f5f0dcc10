#include "thrustgov/aero.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "thrustgov/common.hpp"

namespace thrustgov {

namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
    require(grid.size() >= 2, std::string(name) + " grid needs >= 2 points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(is_finite(grid[i]), std::string(name) + " grid has non-finite value at index " +
                                        std::to_string(i));
        if (i > 0) {
            require(grid[i] > grid[i - 1], std::string(name) + " grid not strictly increasing at index " +
                                               std::to_string(i));
        }
    }
}

// Index i of the cell [grid[i], grid[i+1]] containing x, clamped to the grid.
std::size_t cell_index(const std::vector<double>& grid, double x) {
    if (x <= grid.front()) return 0;
    if (x >= grid[grid.size() - 2]) return grid.size() - 2;
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    return static_cast<std::size_t>(it - grid.begin()) - 1;
}

double bilinear(const AeroSurface& s, const std::vector<double>& table, double lambda,
                double theta) {
    const double lam = std::clamp(lambda, s.lambda_grid.front(), s.lambda_grid.back());
    const double th = std::clamp(theta, s.theta_grid.front(), s.theta_grid.back());
    const std::size_t i = cell_index(s.lambda_grid, lam);
    const std::size_t j = cell_index(s.theta_grid, th);
    const double u = (lam - s.lambda_grid[i]) / (s.lambda_grid[i + 1] - s.lambda_grid[i]);
    const double v = (th - s.theta_grid[j]) / (s.theta_grid[j + 1] - s.theta_grid[j]);
    const std::size_t nt = s.n_theta();
    const double f00 = table[i * nt + j];
    const double f01 = table[i * nt + j + 1];
    const double f10 = table[(i + 1) * nt + j];
    const double f11 = table[(i + 1) * nt + j + 1];
    return (1.0 - u) * ((1.0 - v) * f00 + v * f01) + u * ((1.0 - v) * f10 + v * f11);
}

}  // namespace

void AeroSurface::validate() const {
    check_grid(lambda_grid, "lambda");
    check_grid(theta_grid, "theta");
    const std::size_t n = n_lambda() * n_theta();
    require(cp_table.size() == n, "cp table size does not match grids");
    require(ct_table.size() == n, "ct table size does not match grids");
    for (std::size_t k = 0; k < n; ++k) {
        const std::string at = " at row " + std::to_string(k / n_theta()) + ", col " +
                               std::to_string(k % n_theta());
        require(is_finite(cp_table[k]) && cp_table[k] >= 0.0 && cp_table[k] <= kBetzLimit,
                "cp out of [0, 0.593]" + at);
        require(is_finite(ct_table[k]) && ct_table[k] >= 0.0 && ct_table[k] <= kCtMax,
                "ct out of [0, 2]" + at);
    }
}

double cp(const AeroSurface& surface, double lambda, double theta) {
    return bilinear(surface, surface.cp_table, lambda, theta);
}

double ct(const AeroSurface& surface, double lambda, double theta) {
    return bilinear(surface, surface.ct_table, lambda, theta);
}

namespace {

double parametric_cp(const ParametricCoeffs& c, double lambda, double theta_deg) {
    const double inv_li = 1.0 / (lambda + 0.08 * theta_deg) -
                          0.035 / (1.0 + theta_deg * theta_deg * theta_deg);
    return c.c1 * (c.c2 * inv_li - c.c3 * theta_deg - c.c4) * std::exp(-c.c5 * inv_li) +
           c.c6 * lambda;
}

}  // namespace

AeroSurface parametric_surface(const ParametricCoeffs& coeffs) {
    AeroSurface s;
    for (double lam = 1.0; lam <= 15.0 + 1e-9; lam += 0.25) s.lambda_grid.push_back(lam);
    for (double th = 0.0; th <= 25.0 + 1e-9; th += 0.5) s.theta_grid.push_back(deg2rad(th));

    const std::size_t nl = s.n_lambda();
    const std::size_t nt = s.n_theta();
    s.cp_table.resize(nl * nt);
    s.ct_table.resize(nl * nt);

    double cp_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            const double raw =
                parametric_cp(coeffs, s.lambda_grid[i], rad2deg(s.theta_grid[j]));
            cp_max = std::max(cp_max, raw);
            s.cp_table[i * nt + j] = std::clamp(raw, 0.0, kBetzLimit);
        }
    }
    require(cp_max <= kBetzLimit, "parametric coefficients violate the Betz limit");
    require(cp_max > 0.0, "parametric coefficients give no positive Cp");

    for (std::size_t i = 0; i < nl; ++i) {
        const double kt = coeffs.kt0 + coeffs.kt1 * s.lambda_grid[i];
        for (std::size_t j = 0; j < nt; ++j) {
            double v = std::clamp(s.cp_table[i * nt + j] * kt, 0.0, kCtMax);
            // Non-increasing in pitch at fixed lambda; the raw product can tick
            // upward in the deep-stall corner of the Cp family.
            if (j > 0) v = std::min(v, s.ct_table[i * nt + j - 1]);
            s.ct_table[i * nt + j] = v;
        }
    }
    s.validate();
    return s;
}

OptimalPoint max_cp_point(const AeroSurface& surface) {
    OptimalPoint best{surface.lambda_grid.front(), -1.0};
    for (std::size_t i = 0; i < surface.n_lambda(); ++i) {
        const double v = surface.cp_at(i, 0);
        if (v > best.cp) best = {surface.lambda_grid[i], v};
    }
    return best;
}

std::optional<MinCtPoint> min_ct_locus(const AeroSurface& surface, double cp_required) {
    require(cp_required > 0.0, "cp_required must be positive");
    std::optional<MinCtPoint> best;
    for (std::size_t i = 0; i < surface.n_lambda(); ++i) {
        for (std::size_t j = 0; j < surface.n_theta(); ++j) {
            if (surface.cp_at(i, j) < cp_required) continue;
            const double c = surface.ct_at(i, j);
            if (!best || c < best->ct) {
                best = MinCtPoint{surface.lambda_grid[i], surface.theta_grid[j], c,
                                  surface.cp_at(i, j)};
            }
        }
    }
    return best;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_number(const std::string& s, const std::string& path, std::size_t row,
                    std::size_t col) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ": row " + std::to_string(row) + ", col " +
                                 std::to_string(col) + ": not a number: '" + s + "'");
    }
}

struct SurfaceFile {
    std::vector<double> lambda_grid;
    std::vector<double> theta_grid;  // rad
    std::vector<double> table;
};

SurfaceFile read_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open surface file: " + path);
    SurfaceFile f;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (f.theta_grid.empty()) {
            if (fields.size() < 3)
                throw std::runtime_error(path + ": header row needs >= 2 pitch columns");
            for (std::size_t c = 1; c < fields.size(); ++c)
                f.theta_grid.push_back(deg2rad(parse_number(fields[c], path, row, c)));
            continue;
        }
        if (fields.size() != f.theta_grid.size() + 1)
            throw std::runtime_error(path + ": row " + std::to_string(row) + ": expected " +
                                     std::to_string(f.theta_grid.size() + 1) + " fields, got " +
                                     std::to_string(fields.size()));
        f.lambda_grid.push_back(parse_number(fields[0], path, row, 0));
        for (std::size_t c = 1; c < fields.size(); ++c)
            f.table.push_back(parse_number(fields[c], path, row, c));
    }
    if (f.lambda_grid.empty()) throw std::runtime_error(path + ": no data rows");
    return f;
}

std::string sibling_ct_path(const std::string& cp_path) {
    const std::size_t pos = cp_path.rfind("cp");
    require(pos != std::string::npos,
            "cannot derive ct file name from '" + cp_path + "' (no 'cp' in path)");
    std::string ct_path = cp_path;
    ct_path.replace(pos, 2, "ct");
    return ct_path;
}

}  // namespace

AeroSurface load_surface(const std::string& cp_path) {
    return load_surface(cp_path, sibling_ct_path(cp_path));
}

AeroSurface load_surface(const std::string& cp_path, const std::string& ct_path) {
    const SurfaceFile fcp = read_surface_file(cp_path);
    const SurfaceFile fct = read_surface_file(ct_path);
    if (fcp.lambda_grid != fct.lambda_grid || fcp.theta_grid != fct.theta_grid)
        throw std::runtime_error("cp file " + cp_path + " and ct file " + ct_path +
                                 " have different grids");
    AeroSurface s;
    s.lambda_grid = fcp.lambda_grid;
    s.theta_grid = fcp.theta_grid;
    s.cp_table = fcp.table;
    s.ct_table = fct.table;
    s.validate();
    return s;
}

void save_surface(const AeroSurface& surface, const std::string& cp_path,
                  const std::string& ct_path) {
    auto write_one = [&surface](const std::string& path, const std::vector<double>& table) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write surface file: " + path);
        char buf[32];
        out << "lambda\\theta";
        for (double th : surface.theta_grid) {
            std::snprintf(buf, sizeof buf, "%.17g", rad2deg(th));
            out << ',' << buf;
        }
        out << '\n';
        for (std::size_t i = 0; i < surface.n_lambda(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", surface.lambda_grid[i]);
            out << buf;
            for (std::size_t j = 0; j < surface.n_theta(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", table[i * surface.n_theta() + j]);
                out << ',' << buf;
            }
            out << '\n';
        }
    };
    write_one(cp_path, surface.cp_table);
    write_one(ct_path, surface.ct_table);
}

}  // namespace thrustgov
