#ifndef DEMCAL_DEM_MATERIAL_HPP
#define DEMCAL_DEM_MATERIAL_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace demcal::dem {

/// Intrinsic (scale-invariant) properties of a solid.
struct Material {
    std::string name;
    double density = 0.0;        // kg/m^3
    double poisson_ratio = 0.0;  // -
    double shear_modulus = 0.0;  // Pa

    /// E = 2G(1 + nu).
    double youngs_modulus() const { return 2.0 * shear_modulus * (1.0 + poisson_ratio); }

    void validate() const;
};

/// Livestock salt: 1210 kg/m^3, nu = 0.25, G = 1.9 GPa.
Material salt();
/// Stainless steel: 7800 kg/m^3, nu = 0.30, G = 80 GPa.
Material stainless_steel();

/// Contact coefficients of one unordered material pair.
struct ContactParams {
    double restitution = 0.5;      // e, 0 < e <= 1
    double static_friction = 0.0;  // mu_s
    double rolling_friction = 0.0; // mu_r

    void validate() const;
};

using MaterialId = std::size_t;

/// ContactParams keyed by unordered material pair.
class ContactTable {
public:
    void set(MaterialId a, MaterialId b, const ContactParams& params);
    const ContactParams& get(MaterialId a, MaterialId b) const;
    bool contains(MaterialId a, MaterialId b) const;

private:
    static std::pair<MaterialId, MaterialId> key(MaterialId a, MaterialId b) {
        return a <= b ? std::pair{a, b} : std::pair{b, a};
    }
    std::map<std::pair<MaterialId, MaterialId>, ContactParams> table_;
};

}  // namespace demcal::dem

#endif  // DEMCAL_DEM_MATERIAL_HPP
