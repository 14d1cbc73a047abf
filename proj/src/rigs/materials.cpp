#include "demcal/rigs/materials.hpp"

namespace demcal::rigs {

dem::ContactTable MaterialSet::table() const {
    dem::ContactTable t;
    t.set(kParticle, kParticle, particle_particle);
    t.set(kParticle, kWall, particle_wall);
    t.set(kWall, kWall, particle_wall);
    return t;
}

void MaterialSet::validate() const {
    particle.validate();
    wall.validate();
    particle_particle.validate();
    particle_wall.validate();
}

dem::World make_world(const MaterialSet& materials, const dem::Box& domain) {
    materials.validate();
    return dem::World(materials.list(), materials.table(), domain, Vec3{0.0, 0.0, -9.81});
}

}  // namespace demcal::rigs
