#include "demcal/pipeline/record.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::pipeline {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        detail::fail(ErrorCode::StageFailure, "SHA-256 digest failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

void StageRecord::seal() {
    outputs_digest = sha256_hex(json{{"design", design}, {"responses", responses}, {"derived", derived}}.dump());
}

json to_json(const StageRecord& r) {
    return {{"stage", r.stage},           {"source", r.source},         {"inputs_digest", r.inputs_digest},
            {"outputs_digest", r.outputs_digest}, {"design", r.design}, {"responses", r.responses},
            {"derived", r.derived},       {"seeds", r.seeds},           {"warnings", r.warnings},
            {"duration_s", r.duration_s}};
}

StageRecord record_from_json(const json& j) {
    StageRecord r;
    try {
        r.stage = j.at("stage").get<std::string>();
        r.source = j.at("source").get<std::string>();
        r.inputs_digest = j.at("inputs_digest").get<std::string>();
        r.outputs_digest = j.at("outputs_digest").get<std::string>();
        r.design = j.at("design");
        r.responses = j.at("responses");
        r.derived = j.at("derived");
        r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.duration_s = j.at("duration_s").get<double>();
    } catch (const json::exception& e) {
        detail::fail(ErrorCode::InvalidInput, std::string("malformed stage record: ") + e.what());
    }
    return r;
}

void write_record(const std::filesystem::path& file, const StageRecord& r) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    // write then rename, so a killed run never leaves a half record behind
    const auto tmp = std::filesystem::path(file.string() + ".tmp");
    {
        std::ofstream out(tmp);
        detail::require(static_cast<bool>(out), "cannot write " + tmp.string());
        out << to_json(r).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, file);
}

StageRecord read_record(const std::filesystem::path& file) {
    std::ifstream in(file);
    detail::require(static_cast<bool>(in), "cannot read " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        detail::fail(ErrorCode::InvalidInput, file.string() + ": " + e.what());
    }
    return record_from_json(j);
}

}  // namespace demcal::pipeline
