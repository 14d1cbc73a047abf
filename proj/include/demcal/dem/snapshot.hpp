#ifndef DEMCAL_DEM_SNAPSHOT_HPP
#define DEMCAL_DEM_SNAPSHOT_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "demcal/dem/world.hpp"

namespace demcal::dem {

/// One row of a particle snapshot (SI units).
struct SnapshotRow {
    std::int64_t id = 0;
    Vec3 position;
    double radius = 0.0;
    Vec3 velocity;
    Vec3 angular_velocity;
};

using Snapshot = std::vector<SnapshotRow>;

inline constexpr const char* kSnapshotHeader = "id,x,y,z,radius,vx,vy,vz,wx,wy,wz";

Snapshot take_snapshot(const World& world);

void write_snapshot(std::ostream& os, const Snapshot& snap);
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Steps `world` for config.duration, writing `snapshot_<n>.csv` into `dir`
/// every config.snapshot_interval when that interval is positive.
void run(World& world, const SimConfig& config, const std::filesystem::path& dir = {});

}  // namespace demcal::dem

#endif  // DEMCAL_DEM_SNAPSHOT_HPP
