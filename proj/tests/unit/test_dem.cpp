#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "demcal/dem/contact.hpp"
#include "demcal/dem/snapshot.hpp"
#include "demcal/dem/world.hpp"
#include "demcal/error.hpp"

using namespace demcal;
using namespace demcal::dem;

namespace {

constexpr double kPi = std::numbers::pi;

ContactParams frictionless(double e) { return ContactParams{e, 0.0, 0.0}; }

double sphere_mass(double rho, double r) { return rho * 4.0 / 3.0 * kPi * r * r * r; }

World two_sphere_world(double e, double r, double speed, double mu_s = 0.0) {
    ContactTable table;
    table.set(0, 0, ContactParams{e, mu_s, 0.0});
    World w({salt()}, table, Box{{-0.05, -0.05, -0.05}, {0.05, 0.05, 0.05}}, Vec3{});
    Particle a;
    a.id = 1;
    a.radius = r;
    a.position = {-1.05 * r, 0, 0};
    a.velocity = {speed, 0, 0};
    Particle b = a;
    b.id = 2;
    b.position = {1.05 * r, 0, 0};
    b.velocity = {-speed, 0, 0};
    w.add_particle(a);
    w.add_particle(b);
    return w;
}

struct CollisionOutcome {
    double ratio = 0.0;
    double peak_force = 0.0;
    double max_overlap = 0.0;
};

// Runs a head-on collision until the spheres separate again.
CollisionOutcome collide(World w, const SimConfig& cfg, double speed) {
    CollisionOutcome out;
    bool touched = false;
    for (int k = 0; k < 10'000'000; ++k) {
        w.advance(cfg);
        const auto& p = w.particles();
        const double gap = p[1].position.x - p[0].position.x - p[0].radius - p[1].radius;
        if (gap < 0.0) {
            touched = true;
            out.peak_force = std::max(out.peak_force, norm(p[0].force));
            out.max_overlap = std::max(out.max_overlap, -gap / p[0].radius);
        } else if (touched) {
            break;
        }
    }
    const auto& p = w.particles();
    out.ratio = (p[1].velocity.x - p[0].velocity.x) / (2.0 * speed);
    return out;
}

// Independent oracle: 1-D normal-overlap ODE m* d'' = -(k d^1.5 + c(d) d'),
// Hertz stiffness and restitution damping written out from scratch, RK4.
double ode_restitution(double e, double r, double v_rel, double dt) {
    const double G = 1.9e9, nu = 0.25, rho = 1210.0;
    const double E = 2.0 * G * (1.0 + nu);
    const double e_star = E / (2.0 * (1.0 - nu * nu));
    const double r_star = r / 2.0;
    const double m_star = sphere_mass(rho, r) / 2.0;
    const double beta = std::log(e) / std::sqrt(std::log(e) * std::log(e) + kPi * kPi);
    auto accel = [&](double d, double dd) {
        if (d <= 0.0) return 0.0;
        const double sn = 2.0 * e_star * std::sqrt(r_star * d);
        const double f = 4.0 / 3.0 * e_star * std::sqrt(r_star) * std::pow(d, 1.5) -
                         2.0 * std::sqrt(5.0 / 6.0) * beta * std::sqrt(sn * m_star) * dd;
        return -f / m_star;
    };
    double d = 0.0, dd = v_rel;
    while (true) {
        const double k1v = accel(d, dd), k1x = dd;
        const double k2v = accel(d + 0.5 * dt * k1x, dd + 0.5 * dt * k1v), k2x = dd + 0.5 * dt * k1v;
        const double k3v = accel(d + 0.5 * dt * k2x, dd + 0.5 * dt * k2v), k3x = dd + 0.5 * dt * k2v;
        const double k4v = accel(d + dt * k3x, dd + dt * k3v), k4x = dd + dt * k3v;
        d += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        dd += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        if (d < 0.0) break;
    }
    return -dd / v_rel;
}

SimConfig config_for(double r, double fraction = 0.1) {
    SimConfig cfg;
    const Material m = salt();
    cfg.timestep = stable_timestep(std::span<const Material>(&m, 1), r, fraction);
    return cfg;
}

}  // namespace

TEST(EffectivePair, EqualSpheresHalveRadiusAndMass) {
    const double r = 1e-3;
    const auto p = effective_pair(salt(), salt(), r, r, frictionless(0.5));
    EXPECT_DOUBLE_EQ(p.r_star, r / 2.0);
    EXPECT_NEAR(p.m_star, 4.0 * kPi * r * r * r * 1210.0 / 6.0, 1e-18);
    EXPECT_LT(p.r_star, r);
    EXPECT_LT(p.m_star, sphere_mass(1210.0, r));
}

TEST(EffectivePair, UnequalRadii) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 2e-3, frictionless(0.5));
    EXPECT_NEAR(p.r_star, 2.0 / 3.0 * 1e-3, 1e-15);
    // beta = 2: m* = 4 pi R^3 rho beta^3 / (3 (1 + beta^3))
    EXPECT_NEAR(p.m_star, 4.0 * kPi * 1e-9 * 1210.0 * 8.0 / (3.0 * 9.0), 1e-15);
}

TEST(EffectivePair, ModuliAndDamping) {
    const auto p = effective_pair(salt(), stainless_steel(), 1e-3, 1e-3, frictionless(1.0));
    const double es = 1.0 / ((1 - 0.0625) / 4.75e9 + (1 - 0.09) / (2 * 8e10 * 1.3));
    const double gs = 1.0 / ((2 - 0.25) / 1.9e9 + (2 - 0.3) / 8e10);
    EXPECT_NEAR(p.e_star / es, 1.0, 1e-12);
    EXPECT_NEAR(p.g_star / gs, 1.0, 1e-12);
    EXPECT_EQ(p.damping_ratio, 0.0);
    EXPECT_NEAR(damping_ratio(0.5), std::log(0.5) / std::sqrt(std::log(0.5) * std::log(0.5) + kPi * kPi), 1e-15);
}

TEST(EffectivePair, RejectsNonFiniteInput) {
    try {
        effective_pair(salt(), salt(), std::nan(""), 1e-3, frictionless(0.5));
        FAIL() << "expected invalid-input";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
    }
    Material bad = salt();
    bad.density = std::numeric_limits<double>::infinity();
    EXPECT_THROW(effective_pair(bad, salt(), 1e-3, 1e-3, frictionless(0.5)), Error);
}

TEST(HertzNormal, ZeroAndNegativeOverlap) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(0.5));
    EXPECT_EQ(hertz_normal_force(0.0, -1.0, p), 0.0);
    EXPECT_EQ(hertz_normal_force(-1e-6, -1.0, p), 0.0);
}

TEST(HertzNormal, SaltPairGolden) {
    // scripted closed form: 4/3 * E* * sqrt(R*) * d^1.5, E* = 2.5333 GPa, R* = 0.5 mm, d = 1 um
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(0.5));
    EXPECT_NEAR(hertz_normal_force(1e-6, 0.0, p), 0.07552940723999288, 1e-14);
    EXPECT_NEAR(normal_stiffness(1e-6, p), 113294.11085998933, 1e-8);
}

TEST(HertzNormal, ElasticWhenRestitutionIsOne) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(1.0));
    EXPECT_EQ(hertz_normal_force(1e-6, -0.7, p), hertz_normal_force(1e-6, 0.0, p));
    EXPECT_EQ(hertz_normal_force(1e-6, 0.7, p), hertz_normal_force(1e-6, 0.0, p));
}

TEST(HertzNormal, DampingOpposesApproach) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(0.5));
    const double f0 = hertz_normal_force(1e-6, 0.0, p);
    EXPECT_GT(hertz_normal_force(1e-6, -0.5, p), f0);
    EXPECT_LT(hertz_normal_force(1e-6, 0.5, p), f0);
}

TEST(HertzNormal, ClampFlagPreventsTension) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(0.2));
    EXPECT_LT(hertz_normal_force(1e-9, 5.0, p), 0.0);
    EXPECT_EQ(hertz_normal_force(1e-9, 5.0, p, ContactLaw{true}), 0.0);
}

TEST(MindlinTangential, ZeroInputsGiveZero) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, ContactParams{0.5, 0.5, 0.0});
    const auto t = mindlin_tangential_force({}, {}, 1e-6, p, ContactParams{0.5, 0.5, 0.0}, 0.1);
    EXPECT_EQ(t.force, Vec3{});
    EXPECT_FALSE(t.sliding);
}

TEST(MindlinTangential, StiffnessGolden) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(0.5));
    // 8 G* sqrt(R* d), G* = 1.9e9 / 3.5
    EXPECT_NEAR(tangential_stiffness(1e-6, p), 97109.23787999088, 1e-8);
}

TEST(MindlinTangential, CoulombCapExact) {
    const ContactParams cp{0.5, 0.4, 0.0};
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, cp);
    const double fn = 0.05;
    const double st = tangential_stiffness(1e-6, p);
    // uncapped |F_t| = S_t |h| = 2 mu fn
    const Vec3 h{2.0 * cp.static_friction * fn / st, 0, 0};
    const auto t = mindlin_tangential_force(h, {}, 1e-6, p, cp, fn);
    EXPECT_TRUE(t.sliding);
    EXPECT_NEAR(norm(t.force), cp.static_friction * fn, 1e-15);
    EXPECT_NEAR(norm(t.history) * st, cp.static_friction * fn, 1e-15);
    EXPECT_LT(t.force.x, 0.0);
}

TEST(MindlinTangential, BelowCapIsSpring) {
    const ContactParams cp{1.0, 0.4, 0.0};
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, cp);
    const Vec3 h{0, 1e-9, 0};
    const auto t = mindlin_tangential_force(h, {}, 1e-6, p, cp, 0.05);
    EXPECT_FALSE(t.sliding);
    EXPECT_NEAR(t.force.y, -tangential_stiffness(1e-6, p) * 1e-9, 1e-18);
}

TEST(RollingTorque, ZeroCases) {
    const auto p = effective_pair(salt(), salt(), 1e-3, 1e-3, frictionless(0.5));
    EXPECT_EQ(rolling_resistance_torque({1, 2, 3}, 1.0, p, ContactParams{0.5, 0.0, 0.0}), Vec3{});
    EXPECT_EQ(rolling_resistance_torque({}, 1.0, p, ContactParams{0.5, 0.0, 0.23}), Vec3{});
}

TEST(RollingTorque, Magnitude) {
    EffectivePair p;
    p.r_star = 0.5e-3;
    const Vec3 tau = rolling_resistance_torque({0, 0, 3.0}, 1e-3, p, ContactParams{0.5, 0.0, 0.23});
    EXPECT_NEAR(norm(tau), 1.15e-7, 1e-20);
    EXPECT_LT(tau.z, 0.0);
}

TEST(StableTimestep, Golden) {
    const std::vector<Material> mats{salt()};
    EXPECT_NEAR(stable_timestep(mats, 3e-4, 0.2), 1.6397215599745572e-07, 1e-20);
    EXPECT_NEAR(stable_timestep(mats, 6e-4, 0.2), 2.0 * stable_timestep(mats, 3e-4, 0.2), 1e-20);
}

TEST(StableTimestep, RejectsBadInput) {
    const std::vector<Material> mats{salt()};
    EXPECT_THROW(stable_timestep(mats, 3e-4, 0.0), Error);
    EXPECT_THROW(stable_timestep(mats, 3e-4, 1.5), Error);
    EXPECT_THROW(stable_timestep({}, 3e-4, 0.2), Error);
}

TEST(Step, FreeFallIsExact) {
    ContactTable table;
    table.set(0, 0, frictionless(0.5));
    World w({salt()}, table, Box{{-1, -1, -100}, {1, 1, 1}});
    Particle p;
    p.id = 7;
    p.radius = 1e-3;
    w.add_particle(p);
    SimConfig cfg = config_for(1e-3, 0.5);
    const int n = 1000;
    for (int k = 0; k < n; ++k) w = step(std::move(w), cfg);
    EXPECT_NEAR(w.particles()[0].velocity.z, -9.81 * n * cfg.timestep, 1e-12);
    EXPECT_NEAR(w.time(), n * cfg.timestep, 1e-15);
}

TEST(Step, HeadOnRestitutionMatchesOdeOracle) {
    const double r = 1e-3;
    const SimConfig cfg = config_for(r, 0.1);
    const auto out = collide(two_sphere_world(0.5, r, 1.0), cfg, 1.0);
    EXPECT_GE(out.ratio, 0.48);
    EXPECT_LE(out.ratio, 0.52);
    EXPECT_NEAR(out.ratio, ode_restitution(0.5, r, 2.0, cfg.timestep / 100.0), 0.01);
    EXPECT_LT(out.max_overlap, 0.05);
}

TEST(Step, ClampedLawOvershootsRestitution) {
    const double r = 1e-3;
    SimConfig cfg = config_for(r, 0.1);
    cfg.law.clamp_tension = true;
    const auto out = collide(two_sphere_world(0.5, r, 1.0), cfg, 1.0);
    EXPECT_GT(out.ratio, 0.53);
}

TEST(Step, RestitutionConvergesWithTimestep) {
    const double r = 1e-3;
    const double e = 0.6;
    const double exact = ode_restitution(e, r, 2.0, config_for(r, 0.001).timestep);
    const double coarse = std::abs(collide(two_sphere_world(e, r, 1.0), config_for(r, 0.4), 1.0).ratio - exact);
    const double fine = std::abs(collide(two_sphere_world(e, r, 1.0), config_for(r, 0.1), 1.0).ratio - exact);
    EXPECT_LE(fine, 0.5 * coarse + 1e-6);
}

TEST(Step, MomentumConservedAndThirdLaw) {
    World w = two_sphere_world(0.5, 1e-3, 1.0, 0.3);
    // off-centre impact with spin to exercise tangential and rolling terms
    w.mutable_particles()[0].position.y = 0.4e-3;
    w.mutable_particles()[0].angular_velocity = {0, 0, 50};
    w.mutable_contact_table().set(0, 0, ContactParams{0.5, 0.3, 0.1});
    const Vec3 p0 = w.linear_momentum();
    const SimConfig cfg = config_for(1e-3, 0.1);
    bool saw_contact = false;
    for (int k = 0; k < 20000; ++k) {
        w.advance(cfg);
        const auto& ps = w.particles();
        EXPECT_EQ(ps[0].force.x, -ps[1].force.x);
        EXPECT_EQ(ps[0].force.y, -ps[1].force.y);
        EXPECT_EQ(ps[0].force.z, -ps[1].force.z);
        if (norm(ps[0].force) > 0.0) saw_contact = true;
    }
    EXPECT_TRUE(saw_contact);
    const Vec3 p1 = w.linear_momentum();
    const double scale = sphere_mass(1210.0, 1e-3) * 1.0;
    EXPECT_LT(norm(p1 - p0) / scale, 1e-12);
}

TEST(Step, EnergyDoesNotIncreaseAcrossContact) {
    for (double e : {0.3, 0.6, 0.9}) {
        World w = two_sphere_world(e, 1e-3, 1.0);
        const double before = w.kinetic_energy() + w.elastic_energy();
        const auto out = collide(w, config_for(1e-3, 0.1), 1.0);
        // after separation all energy is kinetic: 0.5 * 2m * (ratio * v)^2 * ... per sphere
        const double m = sphere_mass(1210.0, 1e-3);
        const double after = m * out.ratio * out.ratio;
        EXPECT_LE(after, before * (1.0 + 1e-9)) << "e=" << e;
    }
}

TEST(Step, ContactHistoryPrunedOnSeparation) {
    World w = two_sphere_world(0.5, 1e-3, 0.2, 0.5);
    w.mutable_particles()[0].velocity = {0.2, 0.05, 0};
    const SimConfig cfg = config_for(1e-3, 0.1);
    bool had_entry = false;
    for (int k = 0; k < 200000; ++k) {
        w.advance(cfg);
        const auto h = w.contact_history();
        if (!h.empty()) {
            had_entry = true;
            EXPECT_EQ(h.size(), 1u);
            EXPECT_EQ(h.begin()->first.a, 1);
            EXPECT_EQ(h.begin()->first.b, 2);
        } else if (had_entry) {
            break;
        }
    }
    EXPECT_TRUE(had_entry);
    EXPECT_TRUE(w.contact_history().empty());
}

TEST(Step, RemovingParticlesKeepsSurvivorHistory) {
    auto build = [](bool with_bystander) {
        ContactTable table;
        table.set(0, 0, ContactParams{0.5, 0.5, 0.0});
        World w({salt()}, table, Box{{-0.05, -0.05, -0.05}, {0.05, 0.05, 0.05}}, Vec3{});
        if (with_bystander) {
            Particle far;
            far.id = 0;
            far.radius = 1e-3;
            far.position = {0, 0.04, 0};
            w.add_particle(far);
        }
        const World pair = two_sphere_world(0.5, 1e-3, 0.2, 0.5);
        for (Particle p : pair.particles()) w.add_particle(p);
        w.mutable_particles()[with_bystander ? 1 : 0].velocity = {0.2, 0.05, 0};
        return w;
    };
    World ref = build(false);
    World w = build(true);
    const SimConfig cfg = config_for(1e-3, 0.1);
    int k = 0;
    while (ref.contact_history().empty() && k < 200000) {
        ref.advance(cfg);
        w.advance(cfg);
        ++k;
    }
    for (int i = 0; i < 20; ++i) {
        ref.advance(cfg);
        w.advance(cfg);
    }
    ASSERT_FALSE(ref.contact_history().empty());
    EXPECT_EQ(w.remove_particles_if([](const Particle& p) { return p.id == 0; }), 1u);
    EXPECT_EQ(w.particles().size(), 2u);
    EXPECT_EQ(w.contact_history(), ref.contact_history());
    for (int i = 0; i < 200; ++i) {
        ref.advance(cfg);
        w.advance(cfg);
    }
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(w.particles()[i].position, ref.particles()[i].position);
        EXPECT_EQ(w.particles()[i].velocity, ref.particles()[i].velocity);
    }
}

TEST(Step, DeterministicSnapshots) {
    auto run_once = [] {
        ContactTable table;
        table.set(0, 0, ContactParams{0.5, 0.5, 0.1});
        table.set(0, 1, ContactParams{0.5, 0.5, 0.1});
        World w({salt(), stainless_steel()}, table, Box{{-0.02, -0.02, -0.01}, {0.02, 0.02, 0.05}});
        w.add_wall(Wall{"floor", RectPlane{{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, 0.02, 0.02}, 1, std::nullopt});
        for (int i = 0; i < 27; ++i) {
            Particle p;
            p.id = i;
            p.radius = 1e-3 * (1.0 + 0.1 * (i % 3));
            p.position = {(i % 3 - 1) * 3e-3, (i / 3 % 3 - 1) * 3e-3, 2e-3 + (i / 9) * 3.5e-3};
            p.velocity = {0.01 * (i % 5), -0.01 * (i % 4), 0};
            w.add_particle(p);
        }
        SimConfig cfg;
        cfg.timestep = 2e-7;
        for (int k = 0; k < 20000; ++k) w.advance(cfg);
        std::ostringstream os;
        write_snapshot(os, take_snapshot(w));
        return os.str();
    };
    EXPECT_EQ(run_once(), run_once());
}

TEST(Step, DomainOverflowNamesParticle) {
    ContactTable table;
    table.set(0, 0, frictionless(0.5));
    World w({salt()}, table, Box{{-0.01, -0.01, -0.01}, {0.01, 0.01, 0.01}});
    Particle p;
    p.id = 42;
    p.radius = 1e-3;
    p.velocity = {0, 0, -5};
    w.add_particle(p);
    const SimConfig cfg = config_for(1e-3, 0.5);
    try {
        for (int k = 0; k < 1'000'000; ++k) w.advance(cfg);
        FAIL() << "expected domain overflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainOverflow);
        EXPECT_NE(std::string(e.what()).find("42"), std::string::npos);
    }
}

TEST(Step, RejectsTimestepAboveRayleighAndSmallGrid) {
    World w = two_sphere_world(0.5, 1e-3, 1.0);
    SimConfig cfg = config_for(1e-3, 1.0);
    cfg.timestep *= 1.5;
    EXPECT_THROW(w.advance(cfg), Error);
    SimConfig cfg2 = config_for(1e-3, 0.2);
    cfg2.grid_cell = 1.5e-3;
    EXPECT_THROW(validate(w, cfg2), Error);
    EXPECT_THROW(World({}, ContactTable{}, Box{{0, 0, 0}, {1, 1, 1}}), Error);
}

TEST(Step, DuplicateIdsRejected) {
    World w = two_sphere_world(0.5, 1e-3, 1.0);
    Particle p;
    p.id = 1;
    p.radius = 1e-3;
    EXPECT_THROW(w.add_particle(p), Error);
}

TEST(Walls, ParticleRestsOnPlateUnderWeight) {
    ContactTable table;
    table.set(0, 1, ContactParams{0.4, 0.5, 0.0});
    World w({salt(), stainless_steel()}, table, Box{{-0.02, -0.02, -0.01}, {0.02, 0.02, 0.02}});
    w.add_wall(Wall{"plate", Disk{{0, 0, 0}, {0, 0, 1}, 0.01}, 1, std::nullopt});
    Particle p;
    p.id = 0;
    p.radius = 1e-3;
    p.position = {0, 0, 1.5e-3};
    w.add_particle(p);
    const SimConfig cfg = config_for(1e-3, 0.2);
    for (int k = 0; k < 200000; ++k) w.advance(cfg);
    const auto& q = w.particles()[0];
    EXPECT_NEAR(q.velocity.z, 0.0, 1e-6);
    EXPECT_LT(q.position.z, 1e-3);
    EXPECT_GT(q.position.z, 0.99e-3);
    EXPECT_EQ(w.contact_history().size(), 1u);
}

TEST(Walls, FrustumClosestPoint) {
    const Frustum f{{0, 0, 0}, {0, 0, 1}, 0.01, 0.03, 0.02};
    // point outside the cone wall at mid height
    const Vec3 c = closest_point(f, Vec3{0.05, 0, 0.01});
    EXPECT_NEAR(std::hypot(c.x, c.y), 0.01 + 0.02 * (c.z / 0.02), 1e-12);
    const Vec3 axis_pt = closest_point(f, Vec3{0, 0, 0.0});
    EXPECT_NEAR(norm(axis_pt), 0.01, 1e-12);
    const Frustum cyl{{0, 0, 0}, {0, 0, 1}, 0.02, 0.02, 0.05};
    const Vec3 d = closest_point(cyl, Vec3{0.005, 0.0, 0.02});
    EXPECT_NEAR(d.x, 0.02, 1e-12);
    EXPECT_NEAR(d.z, 0.02, 1e-12);
}

TEST(Walls, RotationAngleAndClamp) {
    WallRotation rot{{0, 0, 0}, {0, -1, 0}, 0.1, 1.0, 0.5};
    EXPECT_EQ(rot.angle_at(0.5), 0.0);
    EXPECT_NEAR(rot.angle_at(2.0), 0.1, 1e-15);
    EXPECT_NEAR(rot.angle_at(100.0), 0.5, 1e-15);
    EXPECT_EQ(rot.omega_at(100.0), Vec3{});
    const WallShape s = rotated(RectPlane{{0.04, 0, 0}, {0, 0, 1}, {1, 0, 0}, 0.04, 0.03}, {0, 0, 0}, {0, -1, 0},
                                std::numbers::pi / 6);
    const auto& r = std::get<RectPlane>(s);
    EXPECT_NEAR(r.center.z, 0.04 * 0.5, 1e-15);
    EXPECT_NEAR(r.normal.x, -0.5, 1e-15);
}

TEST(Snapshot, RoundTripPreservesRows) {
    World w = two_sphere_world(0.5, 1e-3, 1.0);
    std::stringstream ss;
    write_snapshot(ss, take_snapshot(w));
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kSnapshotHeader);
    const Snapshot back = read_snapshot(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].id, 2);
    EXPECT_EQ(back[1].position, w.particles()[1].position);
    EXPECT_EQ(back[0].velocity, w.particles()[0].velocity);
}
