#include "demcal/dem/snapshot.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "demcal/error.hpp"

namespace demcal::dem {

Snapshot take_snapshot(const World& world) {
    Snapshot s;
    s.reserve(world.particles().size());
    for (const auto& p : world.particles()) {
        s.push_back({p.id, p.position, p.radius, p.velocity, p.angular_velocity});
    }
    return s;
}

void write_snapshot(std::ostream& os, const Snapshot& snap) {
    os << kSnapshotHeader << '\n';
    os << std::setprecision(17);
    for (const auto& r : snap) {
        os << r.id << ',' << r.position.x << ',' << r.position.y << ',' << r.position.z << ',' << r.radius << ','
           << r.velocity.x << ',' << r.velocity.y << ',' << r.velocity.z << ',' << r.angular_velocity.x << ','
           << r.angular_velocity.y << ',' << r.angular_velocity.z << '\n';
    }
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
    std::ofstream os(path);
    detail::require(static_cast<bool>(os), "cannot open snapshot file " + path.string());
    write_snapshot(os, snap);
}

Snapshot read_snapshot(std::istream& is) {
    std::string line;
    detail::require(static_cast<bool>(std::getline(is, line)), "snapshot is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    detail::require(line == kSnapshotHeader, "unexpected snapshot header: " + line);
    Snapshot s;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream ls(line);
        std::string cell;
        double v[11];
        for (int k = 0; k < 11; ++k) {
            detail::require(static_cast<bool>(std::getline(ls, cell, ',')), "short snapshot row: " + line);
            v[k] = std::stod(cell);
        }
        s.push_back({static_cast<std::int64_t>(std::llround(v[0])), {v[1], v[2], v[3]}, v[4], {v[5], v[6], v[7]},
                     {v[8], v[9], v[10]}});
    }
    return s;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path);
    detail::require(static_cast<bool>(is), "cannot open snapshot file " + path.string());
    return read_snapshot(is);
}

void run(World& world, const SimConfig& config, const std::filesystem::path& dir) {
    const auto n_steps = static_cast<std::uint64_t>(std::llround(config.duration / config.timestep));
    const bool snapshots = config.snapshot_interval > 0.0 && !dir.empty();
    const std::uint64_t every =
        snapshots ? std::max<std::uint64_t>(1, std::llround(config.snapshot_interval / config.timestep)) : 0;
    if (snapshots) std::filesystem::create_directories(dir);
    std::uint64_t written = 0;
    auto dump = [&] {
        std::ostringstream name;
        name << "snapshot_" << std::setw(6) << std::setfill('0') << written++ << ".csv";
        write_snapshot(dir / name.str(), take_snapshot(world));
    };
    if (snapshots) dump();
    for (std::uint64_t k = 1; k <= n_steps; ++k) {
        world.advance(config);
        if (snapshots && k % every == 0) dump();
    }
}

}  // namespace demcal::dem
