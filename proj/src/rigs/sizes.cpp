#include "demcal/rigs/sizes.hpp"

#include <cmath>

#include "demcal/error.hpp"

namespace demcal::rigs {

using detail::require;

void SizeDistribution::validate() const {
    require(!bins.empty(), "size distribution has no bins");
    double sum = 0.0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        require(std::isfinite(bins[i].sieve_size) && bins[i].sieve_size > 0.0, "sieve sizes must be > 0");
        require(std::isfinite(bins[i].mass_fraction) && bins[i].mass_fraction >= 0.0, "fractions must be >= 0");
        if (i > 0) require(bins[i].sieve_size > bins[i - 1].sieve_size, "sieve sizes must be strictly increasing");
        sum += bins[i].mass_fraction;
    }
    require(std::abs(sum - 1.0) <= 1e-9, "size fractions must sum to 1");
}

SizeDistribution SizeDistribution::livestock_salt() {
    return SizeDistribution{{{0.3e-3, 0.26}, {0.5e-3, 0.25}, {1.0e-3, 0.22}, {1.43e-3, 0.17}, {2.0e-3, 0.10}}};
}

double sample_radius(const SizeDistribution& dist, double scale_h, Rng& rng) {
    dist.validate();
    require(std::isfinite(scale_h) && scale_h > 0.0, "scale factor must be > 0");
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto& b : dist.bins) {
        acc += b.mass_fraction;
        if (u < acc) return 0.5 * b.sieve_size * scale_h;
    }
    // u landed in the rounding gap above the last cumulative fraction
    for (auto it = dist.bins.rbegin(); it != dist.bins.rend(); ++it) {
        if (it->mass_fraction > 0.0) return 0.5 * it->sieve_size * scale_h;
    }
    return 0.5 * dist.bins.back().sieve_size * scale_h;
}

}  // namespace demcal::rigs
