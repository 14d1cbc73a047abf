#ifndef DEMCAL_RIGS_DROP_HPP
#define DEMCAL_RIGS_DROP_HPP

#include "demcal/dem/world.hpp"
#include "demcal/rigs/materials.hpp"

namespace demcal::rigs {

/// One particle released above a horizontal plate.
struct DropRig {
    double drop_height = 0.150;      // m, particle bottom above the plate
    double plate_length = 0.100;     // m
    double plate_width = 0.060;      // m
    double particle_radius = 0.001;  // m

    void validate() const;
};

/// Apex of the first rebound (particle bottom above the plate, m) for a
/// frictionless particle-plate restitution `e`.
double run_drop(const DropRig& rig, double e, const MaterialSet& materials, const dem::SimConfig& config);

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_DROP_HPP
