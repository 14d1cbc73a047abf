#ifndef DEMCAL_PIPELINE_RECORD_HPP
#define DEMCAL_PIPELINE_RECORD_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace demcal::pipeline {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// What one stage consumed and produced.
struct StageRecord {
    std::string stage;
    std::string source;         // replay | simulation
    std::string inputs_digest;  // plan, upstream results and response data
    std::string outputs_digest; // design, responses and derived results
    nlohmann::json design = nlohmann::json::array();     // physical factor values per row
    nlohmann::json responses = nlohmann::json::array();  // replicate lists per row
    nlohmann::json derived = nlohmann::json::object();
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> warnings;
    double duration_s = 0.0;  // wall clock, not digested

    /// Sets outputs_digest from design, responses and derived.
    void seal();
};

nlohmann::json to_json(const StageRecord& r);
StageRecord record_from_json(const nlohmann::json& j);

void write_record(const std::filesystem::path& file, const StageRecord& r);
StageRecord read_record(const std::filesystem::path& file);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_RECORD_HPP
