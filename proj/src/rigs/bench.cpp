#include "demcal/rigs/bench.hpp"

#include <cmath>
#include <numbers>

#include "demcal/error.hpp"

namespace demcal::rigs {

using detail::require;

namespace {
constexpr double kDeg = 180.0 / std::numbers::pi;
}

double density_from_displacement(double mass, double v1, double v2) {
    require(std::isfinite(mass) && mass > 0.0, "mass must be > 0");
    require(std::isfinite(v1) && std::isfinite(v2), "volumes must be finite");
    require(v2 > v1, "final volume must exceed initial volume", ErrorCode::InvalidVolume);
    return mass / (v2 - v1);
}

double restitution_from_heights(double rebound, double drop) {
    require(std::isfinite(drop) && drop > 0.0, "drop height must be > 0");
    require(std::isfinite(rebound) && rebound >= 0.0 && rebound <= drop, "rebound height must lie in [0, drop height]");
    return std::sqrt(rebound / drop);
}

double static_friction_from_angle(double alpha_deg) {
    require(std::isfinite(alpha_deg) && alpha_deg >= 0.0 && alpha_deg < 90.0, "angle must lie in [0, 90) degrees");
    return std::tan(alpha_deg / kDeg);
}

double shear_cell_load(double m_h, double m_x, double m_a, double g) {
    require(m_h >= 0.0 && m_x >= 0.0 && m_a >= 0.0 && g > 0.0, "masses must be >= 0 and g > 0");
    return (m_h + m_x + m_a) * g;
}

ShearResult shear_analysis(const std::vector<double>& normal_stress, const std::vector<double>& shear_stress) {
    require(normal_stress.size() == shear_stress.size(), "stress lists differ in length");
    require(normal_stress.size() >= 3, "shear analysis needs at least 3 points", ErrorCode::DegenerateData);
    const double n = static_cast<double>(normal_stress.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < normal_stress.size(); ++i) {
        mx += normal_stress[i];
        my += shear_stress[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < normal_stress.size(); ++i) {
        sxx += (normal_stress[i] - mx) * (normal_stress[i] - mx);
        sxy += (normal_stress[i] - mx) * (shear_stress[i] - my);
    }
    require(sxx > 1e-14 * (1.0 + mx * mx) * n, "normal stresses must not all be equal", ErrorCode::DegenerateData);
    ShearResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.mu_s = r.slope;
    r.phi = std::atan(r.slope) * kDeg;
    return r;
}

}  // namespace demcal::rigs
