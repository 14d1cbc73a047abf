#ifndef DEMCAL_RIGS_BENCH_HPP
#define DEMCAL_RIGS_BENCH_HPP

#include <vector>

namespace demcal::rigs {

/// Bulk density from the liquid displacement method: m / (V2 - V1).
double density_from_displacement(double mass, double v1, double v2);

/// Restitution from a drop test: sqrt(rebound height / drop height).
double restitution_from_heights(double rebound, double drop);

/// Static friction coefficient from a sliding-onset angle in degrees.
double static_friction_from_angle(double alpha_deg);

/// Weight on the shear cell, (m_h + m_x + m_a) g, in N.
double shear_cell_load(double m_h, double m_x, double m_a, double g = 9.81);

struct ShearResult {
    double slope = 0.0;
    double intercept = 0.0;  // kPa, reported as cohesion
    double phi = 0.0;        // deg
    double mu_s = 0.0;
};

/// Least-squares yield locus through (normal, shear) stress pairs.
ShearResult shear_analysis(const std::vector<double>& normal_stress, const std::vector<double>& shear_stress);

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_BENCH_HPP
