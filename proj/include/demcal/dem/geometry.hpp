#ifndef DEMCAL_DEM_GEOMETRY_HPP
#define DEMCAL_DEM_GEOMETRY_HPP

#include <optional>
#include <string>
#include <variant>

#include "demcal/dem/material.hpp"
#include "demcal/vec3.hpp"

namespace demcal::dem {

/// Finite rectangle centred at `center`, spanned by unit vectors u and normal x u.
struct RectPlane {
    Vec3 center;
    Vec3 normal{0, 0, 1};
    Vec3 u{1, 0, 0};
    double half_u = 0.0;
    double half_v = 0.0;
};

/// Flat circular plate.
struct Disk {
    Vec3 center;
    Vec3 normal{0, 0, 1};
    double radius = 0.0;
};

/// Open surface of revolution between two rims; a cylinder when the radii match.
struct Frustum {
    Vec3 base_center;       // centre of the lower rim
    Vec3 axis{0, 0, 1};     // unit, from lower to upper rim
    double radius_bottom = 0.0;
    double radius_top = 0.0;
    double height = 0.0;
};

using WallShape = std::variant<RectPlane, Disk, Frustum>;

/// Prescribed rigid rotation of a wall about a fixed axis.
struct WallRotation {
    Vec3 axis_point;
    Vec3 axis{0, 0, 1};  // unit
    double rate = 0.0;   // rad/s
    double start_time = 0.0;
    std::optional<double> max_angle;  // rad; rotation stops there

    double angle_at(double t) const;
    /// Angular velocity vector at time t (zero before start and after max_angle).
    Vec3 omega_at(double t) const;
};

struct Wall {
    std::string name;
    WallShape shape;
    MaterialId material = 0;
    std::optional<WallRotation> rotation;
};

Wall open_cylinder(std::string name, Vec3 base_center, Vec3 axis, double radius, double height, MaterialId mat);
Wall conical_frustum(std::string name, Vec3 base_center, Vec3 axis, double r_bottom, double r_top, double height,
                     MaterialId mat);

/// Closest point on the wall surface to `p` at its current pose.
Vec3 closest_point(const WallShape& shape, const Vec3& p);

/// The shape rotated by `angle` about (axis_point, axis).
WallShape rotated(const WallShape& shape, const Vec3& axis_point, const Vec3& axis, double angle);

/// Every length of the shape scaled by `factor` about the origin.
WallShape scaled(const WallShape& shape, double factor);

void validate(const WallShape& shape);

}  // namespace demcal::dem

#endif  // DEMCAL_DEM_GEOMETRY_HPP
