#ifndef DEMCAL_RIGS_MATERIALS_HPP
#define DEMCAL_RIGS_MATERIALS_HPP

#include <vector>

#include "demcal/dem/material.hpp"
#include "demcal/dem/world.hpp"

namespace demcal::rigs {

/// Material id of the particles in every rig world.
inline constexpr dem::MaterialId kParticle = 0;
/// Material id of the rig walls.
inline constexpr dem::MaterialId kWall = 1;

/// The granular material, the rig wall material and their contact coefficients.
/// Defaults are the midpoints of the screening ranges.
struct MaterialSet {
    dem::Material particle = dem::salt();
    dem::Material wall = dem::stainless_steel();
    dem::ContactParams particle_particle{0.45, 0.65, 0.2};
    dem::ContactParams particle_wall{0.525, 0.625, 0.35};

    std::vector<dem::Material> list() const { return {particle, wall}; }
    dem::ContactTable table() const;
    void validate() const;
};

/// Empty world holding the two materials, with gravity 9.81 m/s^2 along -z.
dem::World make_world(const MaterialSet& materials, const dem::Box& domain);

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_MATERIALS_HPP
