#ifndef DEMCAL_PIPELINE_PIPELINE_HPP
#define DEMCAL_PIPELINE_PIPELINE_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "demcal/pipeline/plan.hpp"
#include "demcal/pipeline/report.hpp"

namespace demcal::pipeline {

struct RunOptions {
    std::optional<std::filesystem::path> replay;      // response tables instead of simulation
    std::optional<std::filesystem::path> output_dir;  // overrides plan.output_dir
    bool resume = true;  // reuse stage records whose inputs digest still matches
    unsigned threads = 0;
    std::function<void(const std::string&)> log;
};

/// Runs screening, bench calibration, ascent, response surface and
/// verification in order. Each stage record is written to
/// `<out>/stages/` before the next stage starts, followed by CSV tables,
/// SVG plots, report.json and report.txt.
///
/// Throws Error(InvalidPlan) before any work and StageError (or the
/// underlying Error) when a stage fails; a failed stage leaves
/// `<NN>_<stage>.failed.json` behind. An optimizer that misses the target
/// is not an error: the report has `converged == false`.
CalibrationReport calibrate(const CalibrationPlan& plan, const RunOptions& options = {});

/// The seven parameters with provenance, from the bench values and the
/// response surface optimum.
std::vector<CalibratedParameter> assemble_parameters(const CalibrationPlan& plan, const std::vector<double>& values);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_PIPELINE_HPP
