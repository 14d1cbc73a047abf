#include "demcal/pipeline/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::pipeline {

using nlohmann::json;

const CalibratedParameter& CalibrationReport::parameter(const std::string& key) const {
    for (const auto& p : parameters)
        if (p.key == key) return p;
    detail::fail(ErrorCode::InvalidInput, "report has no parameter " + key);
}

json to_json(const CalibrationReport& r) {
    json params = json::array();
    for (const auto& p : r.parameters)
        params.push_back({{"key", p.key},
                          {"name", p.name},
                          {"parameter", p.parameter},
                          {"value", p.value},
                          {"provenance", p.provenance},
                          {"note", p.note}});
    return {{"plan", r.plan_name},
            {"mode", r.mode},
            {"target_angle", r.target_angle},
            {"parameters", params},
            {"verification",
             {{"angle", r.verification_angle}, {"responses", r.verification_responses}, {"relative_error", r.relative_error}}},
            {"converged", r.converged},
            {"warnings", r.warnings},
            {"stage_records", r.stage_records}};
}

CalibrationReport report_from_json(const json& j) {
    CalibrationReport r;
    try {
        r.plan_name = j.at("plan").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.target_angle = j.at("target_angle").get<double>();
        for (const auto& p : j.at("parameters"))
            r.parameters.push_back({p.at("key").get<std::string>(), p.at("name").get<std::string>(),
                                    p.at("parameter").get<std::string>(), p.at("value").get<double>(),
                                    p.at("provenance").get<std::string>(), p.value("note", std::string())});
        const auto& v = j.at("verification");
        r.verification_angle = v.at("angle").get<double>();
        r.verification_responses = v.at("responses").get<std::vector<double>>();
        r.relative_error = v.at("relative_error").get<double>();
        r.converged = j.at("converged").get<bool>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.stage_records = j.at("stage_records").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        detail::fail(ErrorCode::InvalidInput, std::string("malformed calibration report: ") + e.what());
    }
    return r;
}

CalibrationReport read_report(const std::filesystem::path& file) {
    std::ifstream in(file);
    detail::require(static_cast<bool>(in), "cannot read " + file.string());
    try {
        return report_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        detail::fail(ErrorCode::InvalidInput, file.string() + ": " + e.what());
    }
}

std::string render_text(const CalibrationReport& r) {
    std::ostringstream os;
    os << "Calibration report: " << r.plan_name << " (" << r.mode << ")\n\n";
    os << std::left << std::setw(4) << "key" << std::setw(30) << "parameter" << std::right << std::setw(10) << "value"
       << "  provenance\n";
    for (const auto& p : r.parameters) {
        os << std::left << std::setw(4) << p.key << std::setw(30) << p.name << std::right << std::setw(10)
           << std::fixed << std::setprecision(4) << p.value << "  " << p.provenance;
        if (!p.note.empty()) os << " (" << p.note << ")";
        os << '\n';
    }
    os << std::defaultfloat << std::setprecision(6);
    os << "\nTarget angle of repose   " << std::fixed << std::setprecision(2) << r.target_angle << " deg\n";
    os << "Verification angle       " << r.verification_angle << " deg over " << r.verification_responses.size()
       << " replicate(s)\n";
    os << "Relative error           " << std::setprecision(2) << 100.0 * r.relative_error << " %\n";
    os << "Optimizer                " << (r.converged ? "converged" : "NOT converged") << '\n';
    if (!r.warnings.empty()) {
        os << "\nWarnings:\n";
        for (const auto& w : r.warnings) os << "  - " << w << '\n';
    }
    if (!r.stage_records.empty()) {
        os << "\nStage records:\n";
        for (const auto& s : r.stage_records) os << "  " << s << '\n';
    }
    return os.str();
}

}  // namespace demcal::pipeline
