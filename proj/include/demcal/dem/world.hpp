#ifndef DEMCAL_DEM_WORLD_HPP
#define DEMCAL_DEM_WORLD_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "demcal/dem/contact.hpp"
#include "demcal/dem/geometry.hpp"
#include "demcal/dem/material.hpp"
#include "demcal/vec3.hpp"

namespace demcal::dem {

struct Particle {
    std::int64_t id = 0;
    double radius = 0.0;
    Vec3 position;
    Vec3 velocity;
    Vec3 angular_velocity;
    MaterialId material = 0;
    bool rotation_locked = false;

    // Filled in by World::add_particle.
    double mass = 0.0;
    double inertia = 0.0;
    // Resultants of the most recent step.
    Vec3 force;
    Vec3 torque;
};

struct Box {
    Vec3 lo;
    Vec3 hi;

    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
    }
};

struct SimConfig {
    double timestep = 1e-6;          // s
    double duration = 1.0;           // s
    double grid_cell = 0.0;          // m; 0 selects default_grid_cell()
    std::uint64_t rng_seed = 1;
    double snapshot_interval = 0.0;  // s; 0 disables snapshots
    bool deterministic = true;
    ContactLaw law;
};

/// Default neighbour-grid cell: three times the smallest radius, widened to
/// the largest diameter plus a small skin where the sizes are polydisperse.
double default_grid_cell(double r_min, double r_max);

/// Identifies a contact: two particle ids (a < b), or a particle id and a wall index.
struct ContactKey {
    std::int64_t a = 0;
    std::int64_t b = 0;
    bool wall = false;

    friend auto operator<=>(const ContactKey&, const ContactKey&) = default;
};

/// Spherical-particle world with rigid walls, integrated by World::advance.
///
/// Contacts are enumerated from Verlet lists built on a uniform grid. Lists
/// and force accumulation always follow ascending particle index, so runs
/// are bit-reproducible.
class World {
public:
    World(std::vector<Material> materials, ContactTable contacts, Box domain, Vec3 gravity = {0, 0, -9.81});

    /// Adds a particle; fills mass and inertia from its material.
    void add_particle(Particle p);
    void add_wall(Wall w);
    /// Removes every particle matching `pred`, keeping the contact history of
    /// the survivors. Returns the number removed.
    std::size_t remove_particles_if(const std::function<bool(const Particle&)>& pred);

    const std::vector<Particle>& particles() const { return particles_; }
    /// Mutable access; invalidates the neighbour lists. Do not erase through
    /// this, use remove_particles_if.
    std::vector<Particle>& mutable_particles() {
        dirty_ = true;
        return particles_;
    }
    const std::vector<Wall>& walls() const { return walls_; }
    const std::vector<Material>& materials() const { return materials_; }
    const ContactTable& contact_table() const { return contacts_; }
    ContactTable& mutable_contact_table() {
        pair_cache_valid_ = false;
        return contacts_;
    }
    const Box& domain() const { return domain_; }
    void set_domain(const Box& b) { domain_ = b; dirty_ = true; }
    const Vec3& gravity() const { return gravity_; }
    void set_gravity(const Vec3& g) { gravity_ = g; }
    double time() const { return time_; }
    std::uint64_t step_count() const { return steps_; }

    /// Multiplies every length (positions, radii, walls, domain, contact
    /// history) by `length` and every velocity by `velocity`. Spins follow
    /// velocity / length; masses, inertias and the last resultants follow at
    /// fixed density.
    void rescale(double length, double velocity);

    /// Wall geometry at the current time.
    WallShape wall_shape(std::size_t wall) const;
    /// Wall angular velocity at the current time.
    Vec3 wall_omega(std::size_t wall) const;

    /// Accumulated tangential displacement of every currently overlapping contact.
    std::map<ContactKey, Vec3> contact_history() const;

    /// Advances one timestep: assembles contact forces and gravity, then
    /// semi-implicit Euler for translation and explicit Euler for spin.
    /// Throws DomainOverflow naming the escaping particle.
    void advance(const SimConfig& config);

    double kinetic_energy() const;
    /// Hertzian elastic energy (8/15) E* sqrt(R*) d^(5/2) over all contacts.
    double elastic_energy() const;
    Vec3 linear_momentum() const;
    /// Largest overlap relative to the smaller radius of the pair.
    double max_relative_overlap() const;

    double min_radius() const;
    double max_radius() const;

private:
    struct PairConst {
        double e_star = 0.0;
        double g_star = 0.0;
        double damping_ratio = 0.0;
        ContactParams params;
    };

    void refresh_pair_cache();
    const PairConst& pair_const(MaterialId a, MaterialId b) const {
        return pair_cache_[a * materials_.size() + b];
    }
    void rebuild_lists(double cell, double skin);
    bool needs_rebuild(double skin) const;

    std::vector<Material> materials_;
    ContactTable contacts_;
    Box domain_;
    Vec3 gravity_;
    std::vector<Particle> particles_;
    std::vector<Wall> walls_;
    double time_ = 0.0;
    std::uint64_t steps_ = 0;

    std::vector<PairConst> pair_cache_;
    bool pair_cache_valid_ = false;

    // Verlet lists (CSR by particle index, ascending partner index).
    bool dirty_ = true;
    double list_skin_ = 0.0;
    std::vector<Vec3> ref_pos_;
    std::vector<std::uint32_t> nb_start_;
    std::vector<std::uint32_t> nb_index_;
    std::vector<Vec3> nb_hist_;
    // static walls: per particle candidate walls
    std::vector<std::uint32_t> wnb_start_;
    std::vector<std::uint32_t> wnb_wall_;
    std::vector<Vec3> wnb_hist_;
    // moving walls are tested every step: dense [particle][moving wall]
    std::vector<std::size_t> moving_walls_;
    std::vector<Vec3> mw_hist_;
    // scratch for the grid
    std::vector<std::uint32_t> cell_start_;
    std::vector<std::uint32_t> cell_items_;
};

/// Value-semantics step: returns `world` advanced by one timestep.
World step(World world, const SimConfig& config);

/// Checks the config against the world: positive timestep below the Rayleigh
/// limit, and a grid cell no smaller than the largest diameter.
void validate(const World& world, const SimConfig& config);

}  // namespace demcal::dem

#endif  // DEMCAL_DEM_WORLD_HPP
