#include "demcal/rigs/drop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::rigs {

using detail::require;

void DropRig::validate() const {
    require(drop_height > 0.0, "drop height must be > 0");
    require(plate_length > 0.0 && plate_width > 0.0 && particle_radius > 0.0, "plate and particle sizes must be > 0");
    require(plate_length > 2.0 * particle_radius && plate_width > 2.0 * particle_radius,
            "plate is narrower than the particle, which would miss it", ErrorCode::Geometry);
}

double run_drop(const DropRig& rig, double e, const MaterialSet& materials, const dem::SimConfig& config) {
    rig.validate();
    require(std::isfinite(e) && e > 0.0 && e <= 1.0, "restitution must lie in (0, 1]");

    MaterialSet m = materials;
    m.particle_wall = dem::ContactParams{e, 0.0, 0.0};

    const double hl = 0.5 * rig.plate_length;
    const double hw = 0.5 * rig.plate_width;
    const double r = rig.particle_radius;
    const double margin = 0.05;
    dem::World world = make_world(m, dem::Box{{-hl - margin, -hw - margin, -margin},
                                              {hl + margin, hw + margin, rig.drop_height + 2.0 * r + margin}});
    world.add_wall(dem::Wall{"plate", dem::RectPlane{{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, hl, hw}, kWall, std::nullopt});
    dem::Particle p;
    p.id = 0;
    p.radius = r;
    p.position = {0.0, 0.0, rig.drop_height + r};
    p.material = kParticle;
    world.add_particle(p);

    const double g = norm(world.gravity());
    const double t_max = 4.0 * std::sqrt(2.0 * rig.drop_height / g) + 0.1;
    enum class Phase { Falling, Contact, Rising } phase = Phase::Falling;
    double apex = 0.0;
    while (world.time() < t_max) {
        world.advance(config);
        const dem::Particle& q = world.particles()[0];
        const double bottom = q.position.z - q.radius;
        switch (phase) {
            case Phase::Falling:
                if (bottom < 0.0) {
                    if (std::abs(q.position.x) > hl || std::abs(q.position.y) > hw) {
                        std::ostringstream os;
                        os << "particle missed the plate at (" << q.position.x << ", " << q.position.y << ")";
                        detail::fail(ErrorCode::Geometry, os.str());
                    }
                    phase = Phase::Contact;
                }
                break;
            case Phase::Contact:
                if (bottom >= 0.0 && q.velocity.z > 0.0) {
                    phase = Phase::Rising;
                    apex = bottom;
                }
                break;
            case Phase::Rising:
                apex = std::max(apex, bottom);
                if (q.velocity.z <= 0.0) return apex;
                break;
        }
    }
    detail::fail(ErrorCode::Timeout, "drop test did not reach a rebound apex");
}

}  // namespace demcal::rigs
