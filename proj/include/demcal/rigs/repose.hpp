#ifndef DEMCAL_RIGS_REPOSE_HPP
#define DEMCAL_RIGS_REPOSE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "demcal/dem/snapshot.hpp"
#include "demcal/dem/world.hpp"
#include "demcal/error.hpp"
#include "demcal/rigs/materials.hpp"
#include "demcal/rigs/sizes.hpp"

namespace demcal::rigs {

/// Fixed-funnel angle-of-repose rig. Particles are generated inside a
/// conical funnel, discharge through the orifice and pile on a round plate.
struct ReposeRig {
    double orifice_diameter = 0.020;   // m
    double plate_diameter = 0.080;     // m
    double discharge_height = 0.075;   // m, orifice above plate
    int particle_count = 2000;
    double generation_rate = 10000.0;  // 1/s
    double settle_time = 12.0;         // s, measure at this time even if still moving
    double funnel_angle = 60.0;        // deg from horizontal
    double funnel_height = 0.040;      // m
    double settle_energy = 1e-8;       // J, mean kinetic energy per particle
    SizeDistribution sizes = SizeDistribution::livestock_salt();
    double scale_h = 2.0;

    void validate() const;
};

struct ReposeResult {
    double angle = 0.0;                // deg
    std::vector<double> sector_angles; // deg
    std::string pile_snapshot;         // file written, empty if none
    int particles_measured = 0;
    double settled_at = 0.0;           // s
    double max_overlap = 0.0;          // largest overlap / smaller radius seen during the run
};

/// Thrown when the pile is still moving at the end of the configured duration.
class RigTimeout : public Error {
public:
    RigTimeout(const std::string& what, dem::Snapshot last)
        : Error(ErrorCode::Timeout, what), last_(std::move(last)) {}
    const dem::Snapshot& last_snapshot() const { return last_; }

private:
    dem::Snapshot last_;
};

/// Angle of a pile from particle positions: 8 azimuthal sectors about the
/// centroid axis, per radial bin the highest surface point, a straight line
/// fitted to the points between 15% and 85% of the pile height.
ReposeResult measure_repose_angle(const dem::Snapshot& pile);

/// Runs the funnel rig and measures the settled pile. When `snapshot_file`
/// is non-empty the final pile is written there.
ReposeResult run_repose(const ReposeRig& rig, const MaterialSet& materials, const dem::SimConfig& config,
                        const std::filesystem::path& snapshot_file = {});

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_REPOSE_HPP
