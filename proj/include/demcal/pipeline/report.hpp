#ifndef DEMCAL_PIPELINE_REPORT_HPP
#define DEMCAL_PIPELINE_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace demcal::pipeline {

struct CalibratedParameter {
    std::string key;
    std::string name;
    std::string parameter;
    double value = 0.0;
    std::string provenance;  // screened-and-optimized | bench-calibrated | fixed
    std::string note;
};

struct CalibrationReport {
    std::string plan_name;
    std::string mode;  // replay | simulation
    double target_angle = 0.0;
    std::vector<CalibratedParameter> parameters;
    double verification_angle = 0.0;
    std::vector<double> verification_responses;
    double relative_error = 0.0;  // |verification - target| / target
    bool converged = true;
    std::vector<std::string> warnings;
    std::vector<std::string> stage_records;  // paths relative to the output directory

    const CalibratedParameter& parameter(const std::string& key) const;
};

nlohmann::json to_json(const CalibrationReport& r);
CalibrationReport report_from_json(const nlohmann::json& j);
CalibrationReport read_report(const std::filesystem::path& file);

/// Plain-text summary for terminals and report.txt.
std::string render_text(const CalibrationReport& r);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_REPORT_HPP
