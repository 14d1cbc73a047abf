#include "demcal/dem/material.hpp"

#include <cmath>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::dem {

using detail::require;

void Material::validate() const {
    require(std::isfinite(density) && density > 0.0, "material '" + name + "': density must be > 0");
    require(std::isfinite(poisson_ratio) && poisson_ratio > 0.0 && poisson_ratio < 0.5,
            "material '" + name + "': Poisson ratio must lie in (0, 0.5)");
    require(std::isfinite(shear_modulus) && shear_modulus > 0.0,
            "material '" + name + "': shear modulus must be > 0");
}

Material salt() { return {"salt", 1210.0, 0.25, 1.9e9}; }

Material stainless_steel() { return {"steel", 7800.0, 0.30, 8.0e10}; }

void ContactParams::validate() const {
    require(std::isfinite(restitution) && restitution > 0.0 && restitution <= 1.0,
            "restitution must lie in (0, 1]");
    require(std::isfinite(static_friction) && static_friction >= 0.0, "static friction must be >= 0");
    require(std::isfinite(rolling_friction) && rolling_friction >= 0.0, "rolling friction must be >= 0");
}

void ContactTable::set(MaterialId a, MaterialId b, const ContactParams& params) {
    params.validate();
    table_[key(a, b)] = params;
}

const ContactParams& ContactTable::get(MaterialId a, MaterialId b) const {
    auto it = table_.find(key(a, b));
    if (it == table_.end()) {
        std::ostringstream os;
        os << "no contact parameters for material pair (" << a << ", " << b << ")";
        detail::fail(ErrorCode::InvalidInput, os.str());
    }
    return it->second;
}

bool ContactTable::contains(MaterialId a, MaterialId b) const { return table_.count(key(a, b)) != 0; }

}  // namespace demcal::dem
