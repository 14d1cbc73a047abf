#ifndef DEMCAL_PIPELINE_STAGES_HPP
#define DEMCAL_PIPELINE_STAGES_HPP

#include <string>
#include <vector>

#include "demcal/error.hpp"
#include "demcal/pipeline/plan.hpp"
#include "demcal/pipeline/record.hpp"
#include "demcal/pipeline/sources.hpp"

namespace demcal::pipeline {

/// A stage that failed after producing something worth keeping, e.g. a
/// bench curve that cannot be inverted.
class StageError : public Error {
public:
    StageError(const std::string& what, StageRecord record)
        : Error(ErrorCode::StageFailure, what), record_(std::move(record)) {}
    const StageRecord& record() const { return record_; }

private:
    StageRecord record_;
};

/// PB design over every plan factor, one repose run per row, main-effect
/// ANOVA. derived: effects table, `selected` factor keys (p < select_threshold;
/// the largest |effect| when nothing passes).
StageRecord run_screening_stage(const CalibrationPlan& plan, ResponseSource& source);

/// Incline and drop sweeps fitted with quadratics and inverted at the bench
/// measurements; salt-salt friction from shear data or the plan value.
/// derived: `values` keyed by factor, `curves` with data and fits.
StageRecord run_bench_calibration_stage(const CalibrationPlan& plan, ResponseSource& source,
                                        const std::vector<double>& values);

/// Steepest path over the ascent factors. derived: `relative_errors`,
/// `best_level` (1-based), `center`, `low`, `high`, `coding_step`.
StageRecord run_ascent_stage(const CalibrationPlan& plan, ResponseSource& source, const std::vector<double>& values);

/// Box-Behnken around `center`, quadratic fit, ANOVA, metrics and the target
/// search. The reported optimum holds the factor with the largest linear
/// effect at its centre and takes the least sensitive point of the target
/// level curve. derived: `model`, `reduced_model`, `anova`, `metrics`,
/// `candidates`, `converged`, `optimum`.
StageRecord run_rsm_stage(const CalibrationPlan& plan, ResponseSource& source, const std::vector<double>& values,
                          const std::vector<double>& center);

/// Repose replicates with the calibrated set. derived: `angle`, `relative_error`.
StageRecord run_verification(const CalibrationPlan& plan, ResponseSource& source, const std::vector<double>& values);

/// `values` with the ascent factors replaced by `point` (ascent order).
std::vector<double> with_ascent_point(const CalibrationPlan& plan, std::vector<double> values,
                                      const std::vector<double>& point);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_STAGES_HPP
