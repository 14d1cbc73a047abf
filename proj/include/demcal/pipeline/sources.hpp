#ifndef DEMCAL_PIPELINE_SOURCES_HPP
#define DEMCAL_PIPELINE_SOURCES_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "demcal/pipeline/plan.hpp"

namespace demcal::pipeline {

/// Bench sweep: the swept parameter and the measured response per point.
struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

/// Where stage responses come from: rig simulations or recorded tables.
class ResponseSource {
public:
    virtual ~ResponseSource() = default;

    virtual std::string mode() const = 0;
    /// Folded into each stage's input digest, so changed data invalidate a resume.
    virtual std::string fingerprint(const std::string& stage) const = 0;

    /// Repose angles in deg, one list of replicates per design row.
    virtual std::vector<std::vector<double>> repose(const std::string& stage, const std::vector<rigs::MaterialSet>& rows,
                                                    int replicates, std::uint64_t seed) = 0;
    /// Sliding-onset angle in deg against salt-steel static friction.
    virtual Curve incline(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates,
                          std::uint64_t seed) = 0;
    /// Rebound height in mm against salt-steel restitution.
    virtual Curve drop(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates,
                       std::uint64_t seed) = 0;
};

/// Reads `<dir>/<stage>.csv`. Repose stages use columns `run,response`
/// (1-based design row, repeated rows are replicates); bench sweeps
/// (incline.csv, drop.csv) use `x,response` and replace the planned sweep.
class ReplaySource : public ResponseSource {
public:
    explicit ReplaySource(std::filesystem::path dir);

    std::string mode() const override { return "replay"; }
    std::string fingerprint(const std::string& stage) const override;
    std::vector<std::vector<double>> repose(const std::string& stage, const std::vector<rigs::MaterialSet>& rows,
                                            int replicates, std::uint64_t seed) override;
    Curve incline(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates,
                  std::uint64_t seed) override;
    Curve drop(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates, std::uint64_t seed) override;

private:
    std::filesystem::path file(const std::string& stage) const;
    Curve curve(const std::string& stage) const;

    std::filesystem::path dir_;
};

/// Runs the rigs of `plan`. Rows and replicates run on a thread pool; replicate
/// j of row i uses seed + 1000 i + j. Every run is appended to `results_file`.
class SimulationSource : public ResponseSource {
public:
    SimulationSource(const CalibrationPlan& plan, std::filesystem::path results_file, unsigned threads = 0);

    std::string mode() const override { return "simulation"; }
    std::string fingerprint(const std::string&) const override { return "simulation"; }
    std::vector<std::vector<double>> repose(const std::string& stage, const std::vector<rigs::MaterialSet>& rows,
                                            int replicates, std::uint64_t seed) override;
    Curve incline(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates,
                  std::uint64_t seed) override;
    Curve drop(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates, std::uint64_t seed) override;

private:
    CalibrationPlan plan_;
    std::filesystem::path results_;
    unsigned threads_;
};

/// SimConfig for a rig whose smallest particle has radius `r_min`.
dem::SimConfig rig_config(const CalibrationPlan& plan, const rigs::MaterialSet& m, double r_min, std::uint64_t seed);

/// Runs `jobs` calls of `fn(i)` on up to `threads` workers (0: hardware
/// concurrency). The first failing index's exception is rethrown.
void parallel_for(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_SOURCES_HPP
