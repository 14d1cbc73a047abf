#include "demcal/scaling/scaling.hpp"

#include <cmath>
#include <numbers>

#include "demcal/error.hpp"

namespace demcal::scaling {

using detail::require;

ScaleSet scale_factors(double h) {
    require(std::isfinite(h) && h > 0.0, "scale factor h must be > 0");
    ScaleSet s;
    s.h = h;
    s.lambda_L = h;
    s.lambda_rho = 1.0;
    s.lambda_E = 1.0;
    s.lambda_M = s.lambda_rho * h * h * h;
    // E = rho L^2 T^-2 held fixed
    s.lambda_T = std::sqrt(s.lambda_rho * s.lambda_L * s.lambda_L / s.lambda_E);
    s.lambda_V = s.lambda_L / s.lambda_T;
    s.lambda_F = s.lambda_M * s.lambda_L / (s.lambda_T * s.lambda_T);
    return s;
}

dem::World apply_scaling(dem::World world, const ScaleSet& s) {
    world.rescale(s.lambda_L, s.lambda_V);
    return world;
}

DimensionlessGroups dimensionless_groups(double k_n, double c_n, double r_i, double rho, double v0, double beta) {
    for (double v : {k_n, c_n, r_i, rho, v0, beta}) require(std::isfinite(v) && v > 0.0, "dimensionless groups need inputs > 0");
    const double b3 = beta * beta * beta;
    DimensionlessGroups g;
    g.pi1 = 4.0 * std::numbers::pi * b3 / (3.0 * (1.0 + b3));
    g.pi2 = k_n / (r_i * rho * v0 * v0);
    g.pi3 = c_n / (r_i * r_i * rho * v0);
    return g;
}

}  // namespace demcal::scaling
