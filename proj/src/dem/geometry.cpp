#include "demcal/dem/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "demcal/error.hpp"

namespace demcal::dem {

using detail::require;

double WallRotation::angle_at(double t) const {
    const double a = rate * std::max(0.0, t - start_time);
    if (max_angle && std::abs(a) > *max_angle) return std::copysign(*max_angle, a);
    return a;
}

Vec3 WallRotation::omega_at(double t) const {
    if (t < start_time) return {};
    if (max_angle && std::abs(rate * (t - start_time)) >= *max_angle) return {};
    return axis * rate;
}

Wall open_cylinder(std::string name, Vec3 base_center, Vec3 axis, double radius, double height, MaterialId mat) {
    return Wall{std::move(name), Frustum{base_center, unit_or_zero(axis), radius, radius, height}, mat, std::nullopt};
}

Wall conical_frustum(std::string name, Vec3 base_center, Vec3 axis, double r_bottom, double r_top, double height,
                     MaterialId mat) {
    return Wall{std::move(name), Frustum{base_center, unit_or_zero(axis), r_bottom, r_top, height}, mat,
                std::nullopt};
}

namespace {

Vec3 closest_on(const RectPlane& s, const Vec3& p) {
    const Vec3 v = cross(s.normal, s.u);
    const Vec3 d = p - s.center;
    const double a = std::clamp(dot(d, s.u), -s.half_u, s.half_u);
    const double b = std::clamp(dot(d, v), -s.half_v, s.half_v);
    return s.center + s.u * a + v * b;
}

Vec3 closest_on(const Disk& s, const Vec3& p) {
    const Vec3 d = p - s.center;
    Vec3 in_plane = d - s.normal * dot(d, s.normal);
    const double r = norm(in_plane);
    if (r > s.radius) in_plane *= s.radius / r;
    return s.center + in_plane;
}

Vec3 closest_on(const Frustum& s, const Vec3& p) {
    const Vec3 d = p - s.base_center;
    const double z = dot(d, s.axis);
    Vec3 radial = d - s.axis * z;
    const double rho = norm(radial);
    Vec3 e_r;
    if (rho > 0.0) {
        e_r = radial / rho;
    } else {
        // on the axis every meridian is equally close; pick one
        e_r = unit_or_zero(cross(s.axis, std::abs(s.axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0}));
    }
    // closest point on the meridian segment (r_bottom, 0) -> (r_top, h)
    const double dr = s.radius_top - s.radius_bottom;
    const double dz = s.height;
    const double len2 = dr * dr + dz * dz;
    double t = len2 > 0.0 ? ((rho - s.radius_bottom) * dr + z * dz) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double rc = s.radius_bottom + t * dr;
    const double zc = t * dz;
    return s.base_center + s.axis * zc + e_r * rc;
}

}  // namespace

Vec3 closest_point(const WallShape& shape, const Vec3& p) {
    return std::visit([&](const auto& s) { return closest_on(s, p); }, shape);
}

WallShape rotated(const WallShape& shape, const Vec3& axis_point, const Vec3& axis, double angle) {
    auto rot_point = [&](const Vec3& q) { return axis_point + rotate(q - axis_point, axis, angle); };
    auto rot_dir = [&](const Vec3& q) { return rotate(q, axis, angle); };
    return std::visit(
        [&](const auto& s) -> WallShape {
            using T = std::decay_t<decltype(s)>;
            T r = s;
            if constexpr (std::is_same_v<T, RectPlane>) {
                r.center = rot_point(s.center);
                r.normal = rot_dir(s.normal);
                r.u = rot_dir(s.u);
            } else if constexpr (std::is_same_v<T, Disk>) {
                r.center = rot_point(s.center);
                r.normal = rot_dir(s.normal);
            } else {
                r.base_center = rot_point(s.base_center);
                r.axis = rot_dir(s.axis);
            }
            return r;
        },
        shape);
}

WallShape scaled(const WallShape& shape, double factor) {
    return std::visit(
        [&](const auto& s) -> WallShape {
            using T = std::decay_t<decltype(s)>;
            T r = s;
            if constexpr (std::is_same_v<T, RectPlane>) {
                r.center = s.center * factor;
                r.half_u = s.half_u * factor;
                r.half_v = s.half_v * factor;
            } else if constexpr (std::is_same_v<T, Disk>) {
                r.center = s.center * factor;
                r.radius = s.radius * factor;
            } else {
                r.base_center = s.base_center * factor;
                r.radius_bottom = s.radius_bottom * factor;
                r.radius_top = s.radius_top * factor;
                r.height = s.height * factor;
            }
            return r;
        },
        shape);
}

void validate(const WallShape& shape) {
    auto is_unit = [](const Vec3& v) { return std::abs(norm(v) - 1.0) < 1e-9; };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RectPlane>) {
                require(is_unit(s.normal) && is_unit(s.u) && std::abs(dot(s.normal, s.u)) < 1e-9,
                        "rectangle plane needs orthonormal normal and u");
                require(s.half_u > 0.0 && s.half_v > 0.0, "rectangle plane extents must be > 0");
            } else if constexpr (std::is_same_v<T, Disk>) {
                require(is_unit(s.normal), "disk normal must be a unit vector");
                require(s.radius > 0.0, "disk radius must be > 0");
            } else {
                require(is_unit(s.axis), "frustum axis must be a unit vector");
                require(s.height > 0.0 && s.radius_bottom >= 0.0 && s.radius_top >= 0.0 &&
                            (s.radius_bottom > 0.0 || s.radius_top > 0.0),
                        "frustum needs height > 0 and a positive rim radius");
            }
        },
        shape);
}

}  // namespace demcal::dem
