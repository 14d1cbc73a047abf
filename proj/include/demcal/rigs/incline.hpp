#ifndef DEMCAL_RIGS_INCLINE_HPP
#define DEMCAL_RIGS_INCLINE_HPP

#include "demcal/dem/world.hpp"
#include "demcal/rigs/materials.hpp"

namespace demcal::rigs {

/// Tilting plate hinged along one short edge. Four rotation-locked particles
/// rest on it while it rotates at a constant rate.
struct InclineRig {
    double plate_length = 0.080;        // m
    double plate_width = 0.060;         // m
    double angular_rate = 5.0;          // deg/s
    double max_angle = 60.0;            // deg
    double particle_seed_height = 0.003;// m, gap below the particles at release
    double slide_threshold = 0.001;     // m, downslope travel counted as sliding
    double particle_radius = 0.001;     // m
    double settle_time = 1.0;           // s before the plate starts to turn

    void validate() const;
};

/// Plate angle in degrees at which the first particle slides. Only the
/// particle-wall restitution of `materials` is used; friction is mu_s and
/// every other coefficient is zero.
double run_incline(const InclineRig& rig, double mu_s, const MaterialSet& materials, const dem::SimConfig& config);

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_INCLINE_HPP
