#ifndef DEMCAL_SCALING_SCALING_HPP
#define DEMCAL_SCALING_SCALING_HPP

#include "demcal/dem/world.hpp"

namespace demcal::scaling {

/// Coarse-graining factors for a length scale h at fixed density and modulus.
struct ScaleSet {
    double h = 1.0;
    double lambda_L = 1.0;
    double lambda_rho = 1.0;
    double lambda_M = 1.0;
    double lambda_F = 1.0;
    double lambda_E = 1.0;
    double lambda_T = 1.0;
    double lambda_V = 1.0;
};

struct DimensionlessGroups {
    double pi1 = 0.0;
    double pi2 = 0.0;
    double pi3 = 0.0;
};

inline constexpr double kDefaultScale = 2.0;

ScaleSet scale_factors(double h);

/// Copy of `world` with lengths scaled by lambda_L and velocities by lambda_V.
dem::World apply_scaling(dem::World world, const ScaleSet& s);

/// pi1 = 4 pi b^3 / (3 (1 + b^3)), pi2 = k_n / (r rho v0^2), pi3 = c_n / (r^2 rho v0).
DimensionlessGroups dimensionless_groups(double k_n, double c_n, double r_i, double rho, double v0, double beta);

}  // namespace demcal::scaling

#endif  // DEMCAL_SCALING_SCALING_HPP
