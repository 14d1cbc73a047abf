#include "demcal/rigs/repose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "demcal/rng.hpp"

namespace demcal::rigs {

using detail::require;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSectors = 8;
constexpr double kSpillDepth = -0.02;

struct BinTop {
    double rho = 0.0;
    double height = -std::numeric_limits<double>::infinity();
    bool used = false;
};

}  // namespace

void ReposeRig::validate() const {
    require(orifice_diameter > 0.0 && plate_diameter > 0.0 && discharge_height > 0.0,
            "repose rig dimensions must be > 0");
    require(orifice_diameter < plate_diameter, "orifice must be narrower than the plate");
    require(particle_count >= 0, "particle count must be >= 0");
    require(generation_rate > 0.0 && settle_time > 0.0 && settle_energy > 0.0,
            "generation rate, settle time and settle energy must be > 0");
    require(funnel_angle > 0.0 && funnel_angle < 90.0 && funnel_height > 0.0, "funnel needs 0 < angle < 90 and height > 0");
    require(scale_h > 0.0, "scale factor must be > 0");
    sizes.validate();
}

ReposeResult measure_repose_angle(const dem::Snapshot& pile) {
    if (pile.size() < 50) {
        std::ostringstream os;
        os << "repose measurement needs at least 50 particles, got " << pile.size();
        detail::fail(ErrorCode::DegeneratePile, os.str());
    }
    double cx = 0.0, cy = 0.0, r_mean = 0.0, r_max = 0.0;
    for (const auto& p : pile) {
        cx += p.position.x;
        cy += p.position.y;
        r_mean += p.radius;
        r_max = std::max(r_max, p.radius);
    }
    const double n = static_cast<double>(pile.size());
    cx /= n;
    cy /= n;
    r_mean /= n;

    double rho_max = 0.0;
    for (const auto& p : pile) rho_max = std::max(rho_max, std::hypot(p.position.x - cx, p.position.y - cy));
    const double width = std::max(2.0 * r_mean, rho_max / 40.0);
    const auto nbins = static_cast<std::size_t>(rho_max / width) + 1;

    std::vector<BinTop> tops(kSectors * nbins);
    for (const auto& p : pile) {
        const double dx = p.position.x - cx;
        const double dy = p.position.y - cy;
        const double rho = std::hypot(dx, dy);
        const int sector = std::clamp(static_cast<int>((std::atan2(dy, dx) + kPi) / (2.0 * kPi) * kSectors), 0,
                                      kSectors - 1);
        const auto bin = std::min(static_cast<std::size_t>(rho / width), nbins - 1);
        BinTop& t = tops[sector * nbins + bin];
        const double h = p.position.z + p.radius;
        if (h > t.height) {
            t.height = h;
            t.rho = rho;
            t.used = true;
        }
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& t : tops) {
        if (!t.used) continue;
        lo = std::min(lo, t.height);
        hi = std::max(hi, t.height);
    }
    // a layer thinner than one particle has no flank to band
    const bool flat = hi - lo < 2.0 * r_max;
    const double band_lo = flat ? lo : lo + 0.15 * (hi - lo);
    const double band_hi = flat ? hi : lo + 0.85 * (hi - lo);

    ReposeResult out;
    out.particles_measured = static_cast<int>(pile.size());
    for (int s = 0; s < kSectors; ++s) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int m = 0;
        for (std::size_t b = 0; b < nbins; ++b) {
            const BinTop& t = tops[s * nbins + b];
            if (!t.used || t.height < band_lo || t.height > band_hi) continue;
            sx += t.rho;
            sy += t.height;
            sxx += t.rho * t.rho;
            sxy += t.rho * t.height;
            ++m;
        }
        const double var = sxx - sx * sx / m;
        if (m < 3 || !(var > 0.0)) {
            std::ostringstream os;
            os << "sector " << s << " has " << m << " usable radial bins (need 3)";
            detail::fail(ErrorCode::DegeneratePile, os.str());
        }
        const double slope = (sxy - sx * sy / m) / var;
        out.sector_angles.push_back(std::atan(std::abs(slope)) * 180.0 / kPi);
    }
    double sum = 0.0;
    for (double a : out.sector_angles) sum += a;
    out.angle = sum / kSectors;
    return out;
}

ReposeResult run_repose(const ReposeRig& rig, const MaterialSet& materials, const dem::SimConfig& config,
                        const std::filesystem::path& snapshot_file) {
    if (rig.particle_count == 0) detail::fail(ErrorCode::EmptyExperiment, "repose rig asked for zero particles");
    rig.validate();

    const double plate_r = 0.5 * rig.plate_diameter;
    const double r_o = 0.5 * rig.orifice_diameter;
    const double z_o = rig.discharge_height;
    const double cot = 1.0 / std::tan(rig.funnel_angle * kPi / 180.0);
    const double r_top = r_o + rig.funnel_height * cot;
    const double r_cap = 0.5 * rig.sizes.bins.back().sieve_size * rig.scale_h;

    // loose particles can be flung well clear of the funnel; the grid only spans the particles
    const double half = plate_r + 0.5;
    dem::World world = make_world(materials, dem::Box{{-half, -half, -0.06}, {half, half, z_o + rig.funnel_height + 0.5}});
    world.add_wall(dem::Wall{"plate", dem::Disk{{0, 0, 0}, {0, 0, 1}, plate_r}, kWall, std::nullopt});
    world.add_wall(dem::conical_frustum("funnel", {0, 0, z_o}, {0, 0, 1}, r_o, r_top, rig.funnel_height, kWall));
    // spill over the plate edge is kept close by a skirt and removed once it drops below the plate
    const double top = z_o + rig.funnel_height + 0.05;
    world.add_wall(dem::open_cylinder("skirt", {0, 0, -0.05}, {0, 0, 1}, plate_r + 0.05, top + 0.04, kWall));

    // generation zone: upper part of the funnel, clear of its wall
    const double zone_z0 = z_o + 0.4 * rig.funnel_height + r_cap;
    const double zone_z1 = z_o + rig.funnel_height - r_cap;
    const double zone_r = r_o + 0.4 * rig.funnel_height * cot - 1.5 * r_cap;
    require(zone_r > 0.0 && zone_z1 > zone_z0, "funnel too small for the largest particle", ErrorCode::Geometry);

    Rng rng(config.rng_seed);
    const double batch_interval = 0.005;
    double next_batch = 0.0;
    int generated = 0;

    auto insert_batch = [&] {
        const auto target = std::min<long>(rig.particle_count,
                                           static_cast<long>(std::ceil(rig.generation_rate * (world.time() + batch_interval))));
        while (generated < target) {
            dem::Particle p;
            p.id = generated;
            p.radius = sample_radius(rig.sizes, rig.scale_h, rng);
            p.material = kParticle;
            bool placed = false;
            for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
                const double rr = (zone_r - p.radius) * std::sqrt(rng.uniform());
                const double phi = 2.0 * kPi * rng.uniform();
                p.position = {rr * std::cos(phi), rr * std::sin(phi), rng.uniform(zone_z0, zone_z1)};
                placed = true;
                for (const auto& q : world.particles()) {
                    const double gap = p.radius + q.radius + 0.1 * std::min(p.radius, q.radius);
                    if (norm2(q.position - p.position) < gap * gap) {
                        placed = false;
                        break;
                    }
                }
            }
            if (!placed) return;  // zone is crowded; retry with the next batch
            world.add_particle(p);
            ++generated;
        }
    };

    const auto check_every = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(0.002 / config.timestep));
    double settled_at = -1.0;
    double max_overlap = 0.0;
    while (true) {
        if (generated < rig.particle_count && world.time() >= next_batch) {
            insert_batch();
            next_batch += batch_interval;
        }
        world.advance(config);
        if (world.step_count() % check_every != 0) continue;
        max_overlap = std::max(max_overlap, world.max_relative_overlap());
        world.remove_particles_if([](const dem::Particle& p) { return p.position.z < kSpillDepth; });
        const auto alive = static_cast<double>(world.particles().size());
        if (generated == rig.particle_count && (alive == 0.0 || world.kinetic_energy() / alive < rig.settle_energy)) {
            settled_at = world.time();
            break;
        }
        if (world.time() >= rig.settle_time) {
            settled_at = world.time();
            break;
        }
        if (world.time() >= config.duration) {
            std::ostringstream os;
            os << "repose pile still moving at t=" << world.time() << " s (" << generated << " of "
               << rig.particle_count << " particles generated)";
            throw RigTimeout(os.str(), dem::take_snapshot(world));
        }
    }

    const dem::Snapshot all = dem::take_snapshot(world);
    dem::Snapshot on_plate;
    for (const auto& row : all) {
        if (row.position.z > 0.0 && row.position.z < z_o && std::hypot(row.position.x, row.position.y) <= plate_r)
            on_plate.push_back(row);
    }
    ReposeResult out = measure_repose_angle(on_plate);
    out.settled_at = settled_at;
    out.max_overlap = max_overlap;
    if (!snapshot_file.empty()) {
        if (snapshot_file.has_parent_path()) std::filesystem::create_directories(snapshot_file.parent_path());
        dem::write_snapshot(snapshot_file, all);
        out.pile_snapshot = snapshot_file.string();
    }
    return out;
}

}  // namespace demcal::rigs
