#ifndef DEMCAL_DOE_DESIGN_HPP
#define DEMCAL_DOE_DESIGN_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace demcal::doe {

/// A design factor. Coded level c maps to center + c * step.
struct FactorSpec {
    std::string name;
    double low = 0.0;
    double high = 0.0;
    double center = 0.0;
    double step = 0.0;

    /// Two-level coding: center at the midpoint, +-1 at low/high.
    static FactorSpec two_level(std::string name, double low, double high);
    /// Three-level coding low/center/high = center -+ step.
    static FactorSpec three_level(std::string name, double center, double step);

    void validate() const;
};

double decode(const FactorSpec& f, double coded);
double encode(const FactorSpec& f, double physical);

enum class DesignKind { PlackettBurman, Ascent, BoxBehnken };

struct DesignMatrix {
    std::vector<FactorSpec> factors;
    std::vector<std::vector<double>> runs;  // coded levels, one row per run
    DesignKind kind = DesignKind::PlackettBurman;
    /// Unassigned generator columns of a PB design, kept for the error estimate.
    std::vector<std::vector<double>> dummy;

    std::size_t run_count() const { return runs.size(); }
    std::vector<double> decoded_run(std::size_t r) const;
};

/// 12-run design from the cyclic generator + + - + + + - - - + - and a row of minuses.
DesignMatrix plackett_burman(const std::vector<FactorSpec>& factors);

/// Three-factor design: the four +-1 corners of each factor pair with the
/// third factor at 0 (pairs AB, AC, BC), then `n_center` centre runs.
DesignMatrix box_behnken(const std::vector<FactorSpec>& factors, int n_center);

/// Same runs in a seeded random order.
DesignMatrix shuffle(const DesignMatrix& design, std::uint64_t seed);

struct PathPoint {
    std::vector<double> values;  // physical
    bool clipped = false;
};

/// start + j * deltas for j = 0..n_steps-1, clipped to each factor's [low, high].
std::vector<PathPoint> steepest_path(const std::vector<FactorSpec>& factors, const std::vector<double>& start,
                                     const std::vector<double>& deltas, int n_steps);

/// |value - target| / |target|.
double relative_error(double value, double target);

/// `run,<factor names>` with coded levels.
void write_coded_csv(const std::filesystem::path& file, const DesignMatrix& design);
/// `run,<factor names>` with physical values.
void write_decoded_csv(const std::filesystem::path& file, const DesignMatrix& design);

}  // namespace demcal::doe

#endif  // DEMCAL_DOE_DESIGN_HPP
