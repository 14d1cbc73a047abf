#include "demcal/doe/design.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "demcal/error.hpp"
#include "demcal/rng.hpp"

namespace demcal::doe {

using detail::require;

namespace {

constexpr std::array<int, 11> kPbGenerator{+1, +1, -1, +1, +1, +1, -1, -1, -1, +1, -1};

void write_csv(const std::filesystem::path& file, const DesignMatrix& d, bool physical) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file);
    require(static_cast<bool>(os), "cannot write " + file.string());
    os << "run";
    for (const auto& f : d.factors) os << ',' << f.name;
    os << '\n';
    os.precision(12);
    for (std::size_t r = 0; r < d.runs.size(); ++r) {
        os << r + 1;
        const auto row = physical ? d.decoded_run(r) : d.runs[r];
        for (double v : row) os << ',' << v;
        os << '\n';
    }
}

}  // namespace

FactorSpec FactorSpec::two_level(std::string name, double low, double high) {
    FactorSpec f{std::move(name), low, high, 0.5 * (low + high), 0.5 * (high - low)};
    f.validate();
    return f;
}

FactorSpec FactorSpec::three_level(std::string name, double center, double step) {
    FactorSpec f{std::move(name), center - step, center + step, center, step};
    f.validate();
    return f;
}

void FactorSpec::validate() const {
    require(std::isfinite(low) && std::isfinite(high) && low < high, "factor " + name + ": need low < high");
    require(center >= low && center <= high, "factor " + name + ": center outside [low, high]");
    require(std::isfinite(step) && step > 0.0, "factor " + name + ": step must be > 0");
}

double decode(const FactorSpec& f, double coded) { return f.center + coded * f.step; }

double encode(const FactorSpec& f, double physical) { return (physical - f.center) / f.step; }

std::vector<double> DesignMatrix::decoded_run(std::size_t r) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < factors.size(); ++i) out.push_back(decode(factors[i], runs.at(r)[i]));
    return out;
}

DesignMatrix plackett_burman(const std::vector<FactorSpec>& factors) {
    if (factors.empty() || factors.size() > 11) {
        std::ostringstream os;
        os << "Plackett-Burman N=12 takes 1 to 11 factors, got " << factors.size();
        detail::fail(ErrorCode::UnsupportedSize, os.str());
    }
    for (const auto& f : factors) f.validate();
    DesignMatrix d;
    d.factors = factors;
    d.kind = DesignKind::PlackettBurman;
    const std::size_t k = factors.size();
    for (int r = 0; r < 12; ++r) {
        std::vector<double> row(11);
        for (int c = 0; c < 11; ++c) row[c] = r == 11 ? -1.0 : kPbGenerator[(c - r + 11) % 11];
        d.runs.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
        d.dummy.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    }
    return d;
}

DesignMatrix box_behnken(const std::vector<FactorSpec>& factors, int n_center) {
    if (factors.size() != 3) {
        std::ostringstream os;
        os << "Box-Behnken design takes exactly 3 factors, got " << factors.size();
        detail::fail(ErrorCode::UnsupportedSize, os.str());
    }
    require(n_center >= 1, "Box-Behnken design needs at least one centre run");
    for (const auto& f : factors) f.validate();
    DesignMatrix d;
    d.factors = factors;
    d.kind = DesignKind::BoxBehnken;
    constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (const auto& [i, j] : pairs) {
        for (double b : {-1.0, 1.0}) {
            for (double a : {-1.0, 1.0}) {
                std::vector<double> row(3, 0.0);
                row[i] = a;
                row[j] = b;
                d.runs.push_back(row);
            }
        }
    }
    for (int c = 0; c < n_center; ++c) d.runs.emplace_back(3, 0.0);
    return d;
}

DesignMatrix shuffle(const DesignMatrix& design, std::uint64_t seed) {
    std::vector<std::size_t> order(design.runs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng.engine());
    DesignMatrix out = design;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.runs[i] = design.runs[order[i]];
        if (!design.dummy.empty()) out.dummy[i] = design.dummy[order[i]];
    }
    return out;
}

std::vector<PathPoint> steepest_path(const std::vector<FactorSpec>& factors, const std::vector<double>& start,
                                     const std::vector<double>& deltas, int n_steps) {
    require(start.size() == factors.size() && deltas.size() == factors.size(),
            "steepest path needs one start value and one delta per factor");
    require(n_steps >= 1, "steepest path needs at least one step");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        factors[i].validate();
        require(std::isfinite(deltas[i]), "non-finite path delta for " + factors[i].name);
        std::ostringstream os;
        os << "start " << start[i] << " outside [" << factors[i].low << ", " << factors[i].high << "] for "
           << factors[i].name;
        require(start[i] >= factors[i].low && start[i] <= factors[i].high, os.str());
    }
    std::vector<PathPoint> out;
    for (int j = 0; j < n_steps; ++j) {
        PathPoint p;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const double v = start[i] + j * deltas[i];
            const double c = std::clamp(v, factors[i].low, factors[i].high);
            // a point landing on a bound up to rounding is not clipped
            if (std::abs(c - v) > 1e-12 * std::max(1.0, std::abs(v))) p.clipped = true;
            p.values.push_back(c);
        }
        out.push_back(std::move(p));
    }
    return out;
}

double relative_error(double value, double target) {
    require(target != 0.0, "relative error needs a non-zero target");
    return std::abs(value - target) / std::abs(target);
}

void write_coded_csv(const std::filesystem::path& file, const DesignMatrix& design) { write_csv(file, design, false); }

void write_decoded_csv(const std::filesystem::path& file, const DesignMatrix& design) { write_csv(file, design, true); }

}  // namespace demcal::doe
