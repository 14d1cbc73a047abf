#ifndef DEMCAL_DEM_CONTACT_HPP
#define DEMCAL_DEM_CONTACT_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "demcal/dem/material.hpp"
#include "demcal/vec3.hpp"

namespace demcal::dem {

/// Reduced quantities of one contacting pair (Hertz-Mindlin).
struct EffectivePair {
    double e_star = 0.0;         // Pa
    double g_star = 0.0;         // Pa
    double r_star = 0.0;         // m
    double m_star = 0.0;         // kg
    double damping_ratio = 0.0;  // ln(e) / sqrt(ln^2(e) + pi^2), <= 0
};

/// Switches on the Hertz-Mindlin force law.
struct ContactLaw {
    /// Clamp the total normal force at zero. Off by default: with the clamp
    /// the restitution damping no longer reproduces the configured e.
    bool clamp_tension = false;
};

/// ln(e) / sqrt(ln^2(e) + pi^2).
inline double damping_ratio(double restitution) {
    const double l = std::log(restitution);
    return l / std::sqrt(l * l + std::numbers::pi * std::numbers::pi);
}

/// Sphere-sphere pair; m_star is the reduced mass, which equals the
/// 4 pi R_i^3 rho beta^3 / (3 (1 + beta^3)) form for equal densities.
EffectivePair effective_pair(const Material& mat_i, const Material& mat_j, double r_i, double r_j,
                             const ContactParams& contact);

/// Sphere-wall pair: the wall has infinite radius and mass.
EffectivePair effective_wall_pair(const Material& particle, const Material& wall, double r,
                                  const ContactParams& contact);

/// Normal force along the contact normal (positive = repulsive).
/// `normal_rel_velocity` is the separation rate, negative while approaching.
inline double hertz_normal_force(double overlap, double normal_rel_velocity, const EffectivePair& pair,
                                 ContactLaw law = {}) {
    if (!(overlap > 0.0)) return 0.0;
    const double s_n = 2.0 * pair.e_star * std::sqrt(pair.r_star * overlap);
    const double elastic = (2.0 / 3.0) * s_n * overlap;  // (4/3) E* sqrt(R*) d^(3/2)
    const double damping =
        2.0 * std::sqrt(5.0 / 6.0) * pair.damping_ratio * std::sqrt(s_n * pair.m_star) * normal_rel_velocity;
    const double f = elastic + damping;
    return law.clamp_tension ? std::max(f, 0.0) : f;
}

/// Normal contact stiffness S_n = 2 E* sqrt(R* overlap).
inline double normal_stiffness(double overlap, const EffectivePair& pair) {
    return 2.0 * pair.e_star * std::sqrt(pair.r_star * std::max(overlap, 0.0));
}

/// Tangential contact stiffness S_t = 8 G* sqrt(R* overlap).
inline double tangential_stiffness(double overlap, const EffectivePair& pair) {
    return 8.0 * pair.g_star * std::sqrt(pair.r_star * std::max(overlap, 0.0));
}

struct TangentialForce {
    Vec3 force;
    Vec3 history;  // spring displacement after the Coulomb rescale
    bool sliding = false;
};

/// Mindlin no-slip tangential force with Coulomb cap mu_s |f_n|.
inline TangentialForce mindlin_tangential_force(const Vec3& history, const Vec3& tangential_rel_velocity,
                                                double overlap, const EffectivePair& pair,
                                                const ContactParams& contact, double f_n) {
    const double s_t = tangential_stiffness(overlap, pair);
    if (s_t <= 0.0) return {};
    const double gamma_t = -2.0 * std::sqrt(5.0 / 6.0) * pair.damping_ratio * std::sqrt(s_t * pair.m_star);
    const Vec3 damp = tangential_rel_velocity * gamma_t;
    Vec3 force = -(history * s_t) - damp;
    const double limit = contact.static_friction * std::abs(f_n);
    const double mag = norm(force);
    if (mag > limit) {
        force *= (mag > 0.0 ? limit / mag : 0.0);
        // spring part re-derived so that -S_t h - damp equals the capped force
        return {force, -(force + damp) / s_t, true};
    }
    return {force, history, false};
}

/// Constant directional rolling resistance opposing the relative spin.
inline Vec3 rolling_resistance_torque(const Vec3& rel_angular_velocity, double f_n, const EffectivePair& pair,
                                      const ContactParams& contact) {
    if (contact.rolling_friction == 0.0) return {};
    return unit_or_zero(rel_angular_velocity) * (-contact.rolling_friction * std::abs(f_n) * pair.r_star);
}

/// Rayleigh time pi r sqrt(rho/G) / (0.1631 nu + 0.8766).
double rayleigh_time(const Material& material, double radius);

/// safety_fraction times the smallest Rayleigh time over `materials` at r_min.
double stable_timestep(std::span<const Material> materials, double r_min, double safety_fraction);

}  // namespace demcal::dem

#endif  // DEMCAL_DEM_CONTACT_HPP
