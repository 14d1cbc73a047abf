#ifndef DEMCAL_RIGS_SIZES_HPP
#define DEMCAL_RIGS_SIZES_HPP

#include <vector>

#include "demcal/rng.hpp"

namespace demcal::rigs {

struct SizeBin {
    double sieve_size = 0.0;     // m
    double mass_fraction = 0.0;  // -
};

/// Sieve analysis: strictly increasing sizes, fractions summing to 1.
struct SizeDistribution {
    std::vector<SizeBin> bins;

    void validate() const;
    /// Mean sieve fractions of the livestock salt sample.
    static SizeDistribution livestock_salt();
};

/// Radius of one particle: half the sieve size of a bin drawn with
/// probability equal to its fraction, times the coarse-graining factor.
double sample_radius(const SizeDistribution& dist, double scale_h, Rng& rng);

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_SIZES_HPP
