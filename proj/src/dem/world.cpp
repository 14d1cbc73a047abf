#include "demcal/dem/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::dem {

using detail::require;

double default_grid_cell(double r_min, double r_max) { return std::max(3.0 * r_min, 2.0 * r_max + 0.5 * r_min); }

World::World(std::vector<Material> materials, ContactTable contacts, Box domain, Vec3 gravity)
    : materials_(std::move(materials)), contacts_(std::move(contacts)), domain_(domain), gravity_(gravity) {
    require(!materials_.empty(), "world needs at least one material");
    for (const auto& m : materials_) m.validate();
    require(domain_.lo.x < domain_.hi.x && domain_.lo.y < domain_.hi.y && domain_.lo.z < domain_.hi.z,
            "world domain box must have positive extent");
}

void World::add_particle(Particle p) {
    require(std::isfinite(p.radius) && p.radius > 0.0, "particle radius must be > 0");
    require(p.material < materials_.size(), "particle references an unknown material");
    for (const auto& q : particles_) {
        if (q.id == p.id) {
            std::ostringstream os;
            os << "duplicate particle id " << p.id;
            detail::fail(ErrorCode::InvalidInput, os.str());
        }
    }
    const double rho = materials_[p.material].density;
    p.mass = rho * (4.0 / 3.0) * std::numbers::pi * p.radius * p.radius * p.radius;
    p.inertia = 0.4 * p.mass * p.radius * p.radius;
    p.force = {};
    p.torque = {};
    if (p.rotation_locked) p.angular_velocity = {};
    particles_.push_back(p);
    dirty_ = true;
}

void World::add_wall(Wall w) {
    validate(w.shape);
    require(w.material < materials_.size(), "wall references an unknown material");
    if (w.rotation) {
        require(std::abs(norm(w.rotation->axis) - 1.0) < 1e-9, "wall rotation axis must be a unit vector");
    }
    walls_.push_back(std::move(w));
    dirty_ = true;
}

void World::rescale(double length, double velocity) {
    require(std::isfinite(length) && length > 0.0 && std::isfinite(velocity) && velocity > 0.0,
            "scale factors must be finite and > 0");
    const double spin = velocity / length;
    const double l3 = length * length * length;
    const double force = length * length * velocity * velocity;
    for (Particle& p : particles_) {
        p.radius *= length;
        p.position = p.position * length;
        p.velocity = p.velocity * velocity;
        p.angular_velocity = p.angular_velocity * spin;
        p.mass *= l3;
        p.inertia *= l3 * length * length;
        p.force = p.force * force;
        p.torque = p.torque * (force * length);
    }
    for (Wall& w : walls_) {
        w.shape = scaled(w.shape, length);
        if (w.rotation) w.rotation->axis_point = w.rotation->axis_point * length;
    }
    domain_.lo = domain_.lo * length;
    domain_.hi = domain_.hi * length;
    for (auto* hist : {&nb_hist_, &wnb_hist_, &mw_hist_})
        for (Vec3& h : *hist) h = h * length;
    for (Vec3& r : ref_pos_) r = r * length;
    list_skin_ *= length;
    dirty_ = true;
}

WallShape World::wall_shape(std::size_t wall) const {
    const Wall& w = walls_.at(wall);
    if (!w.rotation) return w.shape;
    return rotated(w.shape, w.rotation->axis_point, w.rotation->axis, w.rotation->angle_at(time_));
}

Vec3 World::wall_omega(std::size_t wall) const {
    const Wall& w = walls_.at(wall);
    return w.rotation ? w.rotation->omega_at(time_) : Vec3{};
}

double World::min_radius() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& p : particles_) r = std::min(r, p.radius);
    return r;
}

double World::max_radius() const {
    double r = 0.0;
    for (const auto& p : particles_) r = std::max(r, p.radius);
    return r;
}

void World::refresh_pair_cache() {
    const std::size_t n = materials_.size();
    pair_cache_.assign(n * n, PairConst{});
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!contacts_.contains(a, b)) continue;
            const Material& ma = materials_[a];
            const Material& mb = materials_[b];
            PairConst& pc = pair_cache_[a * n + b];
            pc.params = contacts_.get(a, b);
            pc.e_star = 1.0 / ((1.0 - ma.poisson_ratio * ma.poisson_ratio) / ma.youngs_modulus() +
                               (1.0 - mb.poisson_ratio * mb.poisson_ratio) / mb.youngs_modulus());
            pc.g_star = 1.0 / ((2.0 - ma.poisson_ratio) / ma.shear_modulus + (2.0 - mb.poisson_ratio) / mb.shear_modulus);
            pc.damping_ratio = damping_ratio(pc.params.restitution);
        }
    }
    pair_cache_valid_ = true;
}

bool World::needs_rebuild(double skin) const {
    if (dirty_ || ref_pos_.size() != particles_.size() || skin != list_skin_) return true;
    const double lim2 = 0.25 * skin * skin;
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        if (norm2(particles_[i].position - ref_pos_[i]) > lim2) return true;
    }
    return false;
}

void World::rebuild_lists(double cell, double skin) {
    const std::size_t n = particles_.size();
    // grid over the particles' bounding box, coarsened if it would be too sparse
    Vec3 lo = particles_.empty() ? Vec3{} : particles_[0].position;
    Vec3 hi = lo;
    for (const auto& p : particles_) {
        lo = {std::min(lo.x, p.position.x), std::min(lo.y, p.position.y), std::min(lo.z, p.position.z)};
        hi = {std::max(hi.x, p.position.x), std::max(hi.y, p.position.y), std::max(hi.z, p.position.z)};
    }
    const Vec3 ext = hi - lo;
    const double max_cells = std::max(64.0, 8.0 * static_cast<double>(n));
    while ((ext.x / cell + 1.0) * (ext.y / cell + 1.0) * (ext.z / cell + 1.0) > max_cells) cell *= 1.5;
    const auto nx = static_cast<std::int64_t>(std::floor(ext.x / cell)) + 1;
    const auto ny = static_cast<std::int64_t>(std::floor(ext.y / cell)) + 1;
    const auto nz = static_cast<std::int64_t>(std::floor(ext.z / cell)) + 1;
    const auto ncell = static_cast<std::size_t>(nx * ny * nz);

    auto cell_coord = [&](const Vec3& p, std::int64_t& cx, std::int64_t& cy, std::int64_t& cz) {
        cx = std::clamp<std::int64_t>(static_cast<std::int64_t>((p.x - lo.x) / cell), 0, nx - 1);
        cy = std::clamp<std::int64_t>(static_cast<std::int64_t>((p.y - lo.y) / cell), 0, ny - 1);
        cz = std::clamp<std::int64_t>(static_cast<std::int64_t>((p.z - lo.z) / cell), 0, nz - 1);
    };

    // counting sort of particles into cells
    cell_start_.assign(ncell + 1, 0);
    std::vector<std::uint32_t> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t cx, cy, cz;
        cell_coord(particles_[i].position, cx, cy, cz);
        cell_of[i] = static_cast<std::uint32_t>((cz * ny + cy) * nx + cx);
        ++cell_start_[cell_of[i] + 1];
    }
    for (std::size_t c = 0; c < ncell; ++c) cell_start_[c + 1] += cell_start_[c];
    cell_items_.resize(n);
    {
        std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
        for (std::size_t i = 0; i < n; ++i) cell_items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
    }

    std::vector<std::uint32_t> new_start(n + 1, 0);
    std::vector<std::uint32_t> new_index;
    new_index.reserve(nb_index_.size() + n);
    std::vector<Vec3> new_hist;
    std::vector<std::uint32_t> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        const Particle& pi = particles_[i];
        std::int64_t cx, cy, cz;
        cell_coord(pi.position, cx, cy, cz);
        scratch.clear();
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
            const std::int64_t z = cz + dz;
            if (z < 0 || z >= nz) continue;
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const std::int64_t y = cy + dy;
                if (y < 0 || y >= ny) continue;
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    const std::int64_t x = cx + dx;
                    if (x < 0 || x >= nx) continue;
                    const auto c = static_cast<std::size_t>((z * ny + y) * nx + x);
                    for (std::uint32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
                        const std::uint32_t j = cell_items_[k];
                        if (j <= i) continue;
                        const double cut = pi.radius + particles_[j].radius + skin;
                        if (norm2(pi.position - particles_[j].position) < cut * cut) scratch.push_back(j);
                    }
                }
            }
        }
        std::sort(scratch.begin(), scratch.end());
        new_start[i] = static_cast<std::uint32_t>(new_index.size());
        // carry history from the previous list (both sorted ascending)
        std::uint32_t ok = 0, oend = 0;
        if (i + 1 < nb_start_.size()) {
            ok = nb_start_[i];
            oend = nb_start_[i + 1];
        }
        for (std::uint32_t j : scratch) {
            while (ok < oend && nb_index_[ok] < j) ++ok;
            new_index.push_back(j);
            new_hist.push_back(ok < oend && nb_index_[ok] == j ? nb_hist_[ok] : Vec3{});
        }
    }
    new_start[n] = static_cast<std::uint32_t>(new_index.size());

    // static walls
    moving_walls_.clear();
    for (std::size_t w = 0; w < walls_.size(); ++w) {
        if (walls_[w].rotation) moving_walls_.push_back(w);
    }
    std::vector<std::uint32_t> new_wstart(n + 1, 0);
    std::vector<std::uint32_t> new_wwall;
    std::vector<Vec3> new_whist;
    for (std::size_t i = 0; i < n; ++i) {
        new_wstart[i] = static_cast<std::uint32_t>(new_wwall.size());
        const Particle& pi = particles_[i];
        std::uint32_t ok = 0, oend = 0;
        if (i + 1 < wnb_start_.size()) {
            ok = wnb_start_[i];
            oend = wnb_start_[i + 1];
        }
        for (std::size_t w = 0; w < walls_.size(); ++w) {
            if (walls_[w].rotation) continue;
            const double cut = pi.radius + skin;
            if (norm2(pi.position - closest_point(walls_[w].shape, pi.position)) >= cut * cut) continue;
            while (ok < oend && wnb_wall_[ok] < w) ++ok;
            new_wwall.push_back(static_cast<std::uint32_t>(w));
            new_whist.push_back(ok < oend && wnb_wall_[ok] == w ? wnb_hist_[ok] : Vec3{});
        }
    }
    new_wstart[n] = static_cast<std::uint32_t>(new_wwall.size());

    // moving-wall history is dense; particles only ever append
    mw_hist_.resize(n * moving_walls_.size());

    nb_start_ = std::move(new_start);
    nb_index_ = std::move(new_index);
    nb_hist_ = std::move(new_hist);
    wnb_start_ = std::move(new_wstart);
    wnb_wall_ = std::move(new_wwall);
    wnb_hist_ = std::move(new_whist);
    ref_pos_.resize(n);
    for (std::size_t i = 0; i < n; ++i) ref_pos_[i] = particles_[i].position;
    list_skin_ = skin;
    dirty_ = false;
}

std::size_t World::remove_particles_if(const std::function<bool(const Particle&)>& pred) {
    const std::size_t n = particles_.size();
    constexpr std::uint32_t kGone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> remap(n, kGone);
    std::uint32_t kept = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!pred(particles_[i])) remap[i] = kept++;
    if (kept == n) return 0;

    // the map is monotone, so every remapped list stays sorted
    const std::size_t listed = nb_start_.empty() ? 0 : std::min(n, nb_start_.size() - 1);
    std::vector<std::uint32_t> start, index, wstart, wwall;
    std::vector<Vec3> hist, whist, ref;
    for (std::size_t i = 0; i < listed; ++i) {
        if (remap[i] == kGone) continue;
        start.push_back(static_cast<std::uint32_t>(index.size()));
        for (std::uint32_t k = nb_start_[i]; k < nb_start_[i + 1]; ++k) {
            if (remap[nb_index_[k]] == kGone) continue;
            index.push_back(remap[nb_index_[k]]);
            hist.push_back(nb_hist_[k]);
        }
        wstart.push_back(static_cast<std::uint32_t>(wwall.size()));
        for (std::uint32_t k = wnb_start_[i]; k < wnb_start_[i + 1]; ++k) {
            wwall.push_back(wnb_wall_[k]);
            whist.push_back(wnb_hist_[k]);
        }
        if (i < ref_pos_.size()) ref.push_back(ref_pos_[i]);
    }
    start.push_back(static_cast<std::uint32_t>(index.size()));
    wstart.push_back(static_cast<std::uint32_t>(wwall.size()));
    nb_start_ = std::move(start);
    nb_index_ = std::move(index);
    nb_hist_ = std::move(hist);
    wnb_start_ = std::move(wstart);
    wnb_wall_ = std::move(wwall);
    wnb_hist_ = std::move(whist);
    ref_pos_ = std::move(ref);

    const std::size_t nm = moving_walls_.size();
    std::vector<Vec3> mw;
    for (std::size_t i = 0; i < n && nm > 0; ++i) {
        if (remap[i] == kGone || (i + 1) * nm > mw_hist_.size()) continue;
        mw.insert(mw.end(), mw_hist_.begin() + i * nm, mw_hist_.begin() + (i + 1) * nm);
    }
    mw_hist_ = std::move(mw);

    std::erase_if(particles_, pred);
    dirty_ = true;
    return n - kept;
}

namespace {

struct ContactForce {
    Vec3 force;        // on the first body
    Vec3 torque_a;     // on the first body
    Vec3 torque_b;     // on the second body
};

// One Hertz-Mindlin contact. `n` points from body b to body a.
inline ContactForce contact_force(const Vec3& n, double overlap, const Vec3& v_rel, const Vec3& w_rel, double r_a,
                                  double r_b, double inertia, const EffectivePair& pair, const ContactParams& cp,
                                  Vec3& hist, double dt, ContactLaw law) {
    const double vn = dot(v_rel, n);
    const Vec3 vt = v_rel - n * vn;
    const double fn = hertz_normal_force(overlap, vn, pair, law);

    // keep the spring in the current tangent plane, preserving its length
    const double h_old2 = norm2(hist);
    Vec3 h = hist - n * dot(hist, n);
    if (h_old2 > 0.0) {
        const double h_new2 = norm2(h);
        if (h_new2 > 0.0) h *= std::sqrt(h_old2 / h_new2);
    }
    h += vt * dt;
    const TangentialForce tf = mindlin_tangential_force(h, vt, overlap, pair, cp, fn);
    hist = tf.history;

    ContactForce out;
    out.force = n * fn + tf.force;
    const Vec3 nxft = cross(n, tf.force);
    Vec3 roll = rolling_resistance_torque(w_rel, fn, pair, cp);
    // a constant torque would reverse a slow spin within one step and chatter;
    // cap it at the torque that just stops the relative rotation
    const double roll_cap = inertia * norm(w_rel) / dt;
    const double roll_mag = norm(roll);
    if (roll_mag > roll_cap) roll *= roll_cap / roll_mag;
    out.torque_a = nxft * (-r_a) + roll;
    out.torque_b = nxft * (-r_b) - roll;
    return out;
}

}  // namespace

void World::advance(const SimConfig& config) {
    const double dt = config.timestep;
    const std::size_t n = particles_.size();
    if (!pair_cache_valid_) refresh_pair_cache();

    if (n > 0) {
        const double cell = config.grid_cell > 0.0 ? config.grid_cell : default_grid_cell(min_radius(), max_radius());
        const double r_min = min_radius();
        const double skin = std::clamp(cell - 2.0 * max_radius(), 0.0, 0.5 * r_min);
        if (needs_rebuild(skin)) {
            validate(*this, config);
            rebuild_lists(cell, skin);
        }
    }

    for (auto& p : particles_) {
        p.force = gravity_ * p.mass;
        p.torque = {};
    }

    // particle-particle
    for (std::size_t i = 0; i < n; ++i) {
        Particle& a = particles_[i];
        for (std::uint32_t k = nb_start_[i]; k < nb_start_[i + 1]; ++k) {
            Particle& b = particles_[nb_index_[k]];
            const Vec3 d = a.position - b.position;
            const double rsum = a.radius + b.radius;
            const double dist2 = norm2(d);
            if (dist2 >= rsum * rsum) {
                nb_hist_[k] = {};
                continue;
            }
            const double dist = std::sqrt(dist2);
            const Vec3 nrm = d / dist;
            const PairConst& pc = pair_const(a.material, b.material);
            EffectivePair pair;
            pair.e_star = pc.e_star;
            pair.g_star = pc.g_star;
            pair.damping_ratio = pc.damping_ratio;
            pair.r_star = a.radius * b.radius / rsum;
            pair.m_star = a.mass * b.mass / (a.mass + b.mass);
            const Vec3 v_rel = a.velocity - b.velocity - cross(a.angular_velocity * a.radius + b.angular_velocity * b.radius, nrm);
            const ContactForce cf = contact_force(nrm, rsum - dist, v_rel, a.angular_velocity - b.angular_velocity,
                                                  a.radius, b.radius, a.inertia * b.inertia / (a.inertia + b.inertia), pair,
                                                  pc.params, nb_hist_[k], dt, config.law);
            a.force += cf.force;
            b.force -= cf.force;
            a.torque += cf.torque_a;
            b.torque += cf.torque_b;
        }
    }

    // particle-wall
    auto wall_contact = [&](Particle& a, std::size_t w, const WallShape& shape, const Vec3& omega, Vec3& hist) {
        const Vec3 cp = closest_point(shape, a.position);
        const Vec3 d = a.position - cp;
        const double dist2 = norm2(d);
        if (dist2 >= a.radius * a.radius || dist2 == 0.0) {
            hist = {};
            return;
        }
        const double dist = std::sqrt(dist2);
        const Vec3 nrm = d / dist;
        const Wall& wall = walls_[w];
        const PairConst& pc = pair_const(a.material, wall.material);
        EffectivePair pair;
        pair.e_star = pc.e_star;
        pair.g_star = pc.g_star;
        pair.damping_ratio = pc.damping_ratio;
        pair.r_star = a.radius;
        pair.m_star = a.mass;
        Vec3 v_wall;
        if (wall.rotation) v_wall = cross(omega, cp - wall.rotation->axis_point);
        const Vec3 v_rel = a.velocity - v_wall - cross(a.angular_velocity * a.radius, nrm);
        const ContactForce cf = contact_force(nrm, a.radius - dist, v_rel, a.angular_velocity - omega, a.radius,
                                              0.0, a.inertia, pair, pc.params, hist, dt, config.law);
        a.force += cf.force;
        a.torque += cf.torque_a;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t k = wnb_start_[i]; k < wnb_start_[i + 1]; ++k) {
            const std::size_t w = wnb_wall_[k];
            wall_contact(particles_[i], w, walls_[w].shape, Vec3{}, wnb_hist_[k]);
        }
    }
    if (!moving_walls_.empty()) {
        const std::size_t nm = moving_walls_.size();
        for (std::size_t m = 0; m < nm; ++m) {
            const std::size_t w = moving_walls_[m];
            const WallShape shape = wall_shape(w);
            const Vec3 omega = wall_omega(w);
            for (std::size_t i = 0; i < n; ++i) wall_contact(particles_[i], w, shape, omega, mw_hist_[i * nm + m]);
        }
    }

    // integrate
    for (auto& p : particles_) {
        p.velocity += p.force * (dt / p.mass);
        p.position += p.velocity * dt;
        if (!p.rotation_locked) p.angular_velocity += p.torque * (dt / p.inertia);
    }
    time_ += dt;
    ++steps_;

    for (const auto& p : particles_) {
        if (!domain_.contains(p.position)) {
            std::ostringstream os;
            os << "particle " << p.id << " left the grid domain at t=" << time_ << " s (position " << p.position.x << ", "
               << p.position.y << ", " << p.position.z << "; velocity " << p.velocity.x << ", " << p.velocity.y << ", "
               << p.velocity.z << ")";
            detail::fail(ErrorCode::DomainOverflow, os.str());
        }
    }
}

std::map<ContactKey, Vec3> World::contact_history() const {
    std::map<ContactKey, Vec3> out;
    const std::size_t n = particles_.size();
    if (nb_start_.size() != n + 1) return out;
    for (std::size_t i = 0; i < n; ++i) {
        const Particle& a = particles_[i];
        for (std::uint32_t k = nb_start_[i]; k < nb_start_[i + 1]; ++k) {
            const Particle& b = particles_[nb_index_[k]];
            const double rsum = a.radius + b.radius;
            if (norm2(a.position - b.position) >= rsum * rsum) continue;
            out[ContactKey{std::min(a.id, b.id), std::max(a.id, b.id), false}] = nb_hist_[k];
        }
        auto add_wall = [&](std::size_t w, const Vec3& h) {
            const Vec3 cp = closest_point(wall_shape(w), a.position);
            if (norm2(a.position - cp) >= a.radius * a.radius) return;
            out[ContactKey{a.id, static_cast<std::int64_t>(w), true}] = h;
        };
        for (std::uint32_t k = wnb_start_[i]; k < wnb_start_[i + 1]; ++k) add_wall(wnb_wall_[k], wnb_hist_[k]);
        for (std::size_t m = 0; m < moving_walls_.size(); ++m) {
            if (i * moving_walls_.size() + m < mw_hist_.size())
                add_wall(moving_walls_[m], mw_hist_[i * moving_walls_.size() + m]);
        }
    }
    return out;
}

double World::kinetic_energy() const {
    double e = 0.0;
    for (const auto& p : particles_) {
        e += 0.5 * p.mass * norm2(p.velocity) + 0.5 * p.inertia * norm2(p.angular_velocity);
    }
    return e;
}

double World::elastic_energy() const {
    const std::size_t n = particles_.size();
    double e = 0.0;
    auto estar = [&](MaterialId a, MaterialId b) {
        const Material& ma = materials_[a];
        const Material& mb = materials_[b];
        return 1.0 / ((1.0 - ma.poisson_ratio * ma.poisson_ratio) / ma.youngs_modulus() +
                      (1.0 - mb.poisson_ratio * mb.poisson_ratio) / mb.youngs_modulus());
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Particle& a = particles_[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Particle& b = particles_[j];
            const double rsum = a.radius + b.radius;
            const double dist = norm(a.position - b.position);
            if (dist >= rsum) continue;
            const double d = rsum - dist;
            e += (8.0 / 15.0) * estar(a.material, b.material) * std::sqrt(a.radius * b.radius / rsum) * std::pow(d, 2.5);
        }
        for (std::size_t w = 0; w < walls_.size(); ++w) {
            const double dist = norm(a.position - closest_point(wall_shape(w), a.position));
            if (dist >= a.radius) continue;
            const double d = a.radius - dist;
            e += (8.0 / 15.0) * estar(a.material, walls_[w].material) * std::sqrt(a.radius) * std::pow(d, 2.5);
        }
    }
    return e;
}

Vec3 World::linear_momentum() const {
    Vec3 m;
    for (const auto& p : particles_) m += p.velocity * p.mass;
    return m;
}

double World::max_relative_overlap() const {
    double worst = 0.0;
    const std::size_t n = particles_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Particle& a = particles_[i];
        if (nb_start_.size() == n + 1) {
            for (std::uint32_t k = nb_start_[i]; k < nb_start_[i + 1]; ++k) {
                const Particle& b = particles_[nb_index_[k]];
                const double d = a.radius + b.radius - norm(a.position - b.position);
                if (d > 0.0) worst = std::max(worst, d / std::min(a.radius, b.radius));
            }
        }
        for (std::size_t w = 0; w < walls_.size(); ++w) {
            const double d = a.radius - norm(a.position - closest_point(wall_shape(w), a.position));
            if (d > 0.0) worst = std::max(worst, d / a.radius);
        }
    }
    return worst;
}

World step(World world, const SimConfig& config) {
    world.advance(config);
    return world;
}

void validate(const World& world, const SimConfig& config) {
    require(std::isfinite(config.timestep) && config.timestep > 0.0, "timestep must be > 0");
    if (world.particles().empty()) return;
    const double r_min = world.min_radius();
    const double r_max = world.max_radius();
    const double cell = config.grid_cell > 0.0 ? config.grid_cell : default_grid_cell(r_min, r_max);
    require(cell >= 2.0 * r_max, "grid cell must be at least the largest particle diameter");
    // only materials carried by particles set the Rayleigh limit
    std::vector<Material> used;
    std::vector<bool> seen(world.materials().size(), false);
    for (const auto& p : world.particles()) {
        if (!seen[p.material]) {
            seen[p.material] = true;
            used.push_back(world.materials()[p.material]);
        }
    }
    const double limit = stable_timestep(used, r_min, 1.0);
    if (config.timestep > limit) {
        std::ostringstream os;
        os << "timestep " << config.timestep << " s exceeds the Rayleigh limit " << limit << " s";
        detail::fail(ErrorCode::InvalidInput, os.str());
    }
}

}  // namespace demcal::dem
