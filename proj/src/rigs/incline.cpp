#include "demcal/rigs/incline.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::rigs {

using detail::require;

namespace {
constexpr double kRad = std::numbers::pi / 180.0;
}

void InclineRig::validate() const {
    require(plate_length > 0.0 && plate_width > 0.0, "plate dimensions must be > 0");
    require(angular_rate > 0.0, "angular rate must be > 0");
    require(max_angle > 0.0 && max_angle <= 90.0, "max angle must lie in (0, 90]");
    require(particle_seed_height >= 0.0 && slide_threshold > 0.0 && settle_time >= 0.0,
            "seed height and settle time must be >= 0, slide threshold > 0");
    require(particle_radius > 0.0 && 4.0 * particle_radius < plate_width && 4.0 * particle_radius < plate_length,
            "particles must fit on the plate");
}

double run_incline(const InclineRig& rig, double mu_s, const MaterialSet& materials, const dem::SimConfig& config) {
    rig.validate();
    require(std::isfinite(mu_s) && mu_s >= 0.0, "static friction must be >= 0");

    MaterialSet m = materials;
    m.particle_particle = dem::ContactParams{materials.particle_particle.restitution, 0.0, 0.0};
    m.particle_wall = dem::ContactParams{materials.particle_wall.restitution, mu_s, 0.0};

    const double hl = 0.5 * rig.plate_length;
    const double hw = 0.5 * rig.plate_width;
    const Vec3 hinge{-hl, 0.0, 0.0};
    const Vec3 axis{0.0, -1.0, 0.0};  // raises the far edge
    const double margin = 0.05;
    dem::World world = make_world(m, dem::Box{{-hl - margin, -hw - margin, -margin},
                                              {hl + margin, hw + margin, rig.plate_length + margin}});
    dem::WallRotation rot;
    rot.axis_point = hinge;
    rot.axis = axis;
    rot.rate = rig.angular_rate * kRad;
    rot.start_time = rig.settle_time;
    rot.max_angle = rig.max_angle * kRad;
    world.add_wall(dem::Wall{"plate", dem::RectPlane{{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, hl, hw}, kWall, rot});

    const double r = rig.particle_radius;
    const double xs[2] = {0.0, 0.25 * rig.plate_length};
    const double ys[2] = {-0.25 * rig.plate_width, 0.25 * rig.plate_width};
    int id = 0;
    for (double x : xs) {
        for (double y : ys) {
            dem::Particle p;
            p.id = id++;
            p.radius = r;
            p.position = {x, y, rig.particle_seed_height + r};
            p.material = kParticle;
            p.rotation_locked = true;
            world.add_particle(p);
        }
    }

    auto downslope_coord = [&](const Vec3& pos) {
        const Vec3 u = rotate(Vec3{1.0, 0.0, 0.0}, axis, rot.angle_at(world.time()));
        return dot(pos - hinge, u);
    };

    const double t_full = rig.settle_time + rig.max_angle / rig.angular_rate;
    std::vector<double> start;
    while (true) {
        world.advance(config);
        if (world.time() < rig.settle_time) continue;
        if (start.empty()) {
            for (const auto& p : world.particles()) start.push_back(downslope_coord(p.position));
            continue;
        }
        const auto& ps = world.particles();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (start[i] - downslope_coord(ps[i].position) > rig.slide_threshold)
                return rot.angle_at(world.time()) / kRad;
        }
        if (world.time() > t_full + 0.5) {
            std::ostringstream os;
            os << "no particle slid before the plate reached " << rig.max_angle << " deg (mu_s=" << mu_s << ")";
            detail::fail(ErrorCode::NoSlide, os.str());
        }
    }
}

}  // namespace demcal::rigs
