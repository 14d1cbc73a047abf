#include "demcal/dem/contact.hpp"

#include <limits>

#include "demcal/error.hpp"

namespace demcal::dem {

using detail::require;

namespace {

double sphere_mass(double density, double r) { return density * (4.0 / 3.0) * std::numbers::pi * r * r * r; }

void check_common(const Material& a, const Material& b, const ContactParams& contact) {
    a.validate();
    b.validate();
    contact.validate();
}

}  // namespace

EffectivePair effective_pair(const Material& mat_i, const Material& mat_j, double r_i, double r_j,
                             const ContactParams& contact) {
    require(std::isfinite(r_i) && std::isfinite(r_j) && r_i > 0.0 && r_j > 0.0, "radii must be finite and > 0");
    check_common(mat_i, mat_j, contact);
    const double nu_i = mat_i.poisson_ratio;
    const double nu_j = mat_j.poisson_ratio;
    const double m_i = sphere_mass(mat_i.density, r_i);
    const double m_j = sphere_mass(mat_j.density, r_j);
    EffectivePair p;
    p.e_star = 1.0 / ((1.0 - nu_i * nu_i) / mat_i.youngs_modulus() + (1.0 - nu_j * nu_j) / mat_j.youngs_modulus());
    p.g_star = 1.0 / ((2.0 - nu_i) / mat_i.shear_modulus + (2.0 - nu_j) / mat_j.shear_modulus);
    p.r_star = r_i * r_j / (r_i + r_j);
    p.m_star = m_i * m_j / (m_i + m_j);
    p.damping_ratio = damping_ratio(contact.restitution);
    return p;
}

EffectivePair effective_wall_pair(const Material& particle, const Material& wall, double r,
                                  const ContactParams& contact) {
    require(std::isfinite(r) && r > 0.0, "radius must be finite and > 0");
    check_common(particle, wall, contact);
    const double nu_p = particle.poisson_ratio;
    const double nu_w = wall.poisson_ratio;
    EffectivePair p;
    p.e_star = 1.0 / ((1.0 - nu_p * nu_p) / particle.youngs_modulus() + (1.0 - nu_w * nu_w) / wall.youngs_modulus());
    p.g_star = 1.0 / ((2.0 - nu_p) / particle.shear_modulus + (2.0 - nu_w) / wall.shear_modulus);
    p.r_star = r;
    p.m_star = sphere_mass(particle.density, r);
    p.damping_ratio = damping_ratio(contact.restitution);
    return p;
}

double rayleigh_time(const Material& material, double radius) {
    return std::numbers::pi * radius * std::sqrt(material.density / material.shear_modulus) /
           (0.1631 * material.poisson_ratio + 0.8766);
}

double stable_timestep(std::span<const Material> materials, double r_min, double safety_fraction) {
    require(!materials.empty(), "stable_timestep: empty material list");
    require(std::isfinite(r_min) && r_min > 0.0, "stable_timestep: r_min must be > 0");
    require(safety_fraction > 0.0 && safety_fraction <= 1.0, "stable_timestep: safety fraction must lie in (0, 1]");
    double t = std::numeric_limits<double>::infinity();
    for (const auto& m : materials) {
        m.validate();
        t = std::min(t, rayleigh_time(m, r_min));
    }
    return safety_fraction * t;
}

}  // namespace demcal::dem
