#ifndef DEMCAL_RIGS_RESULTS_HPP
#define DEMCAL_RIGS_RESULTS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace demcal::rigs {

inline constexpr const char* kResultsHeader = "rig,replicate,seed,parameter_json,response,unit";

struct RigRecord {
    std::string rig;
    int replicate = 0;
    std::uint64_t seed = 0;
    std::string parameter_json;
    double response = 0.0;
    std::string unit;
};

void write_record(std::ostream& os, const RigRecord& r);
/// Appends to a results CSV, writing the header when the file is new.
void append_records(const std::filesystem::path& file, const std::vector<RigRecord>& records);
std::vector<RigRecord> read_records(const std::filesystem::path& file);

}  // namespace demcal::rigs

#endif  // DEMCAL_RIGS_RESULTS_HPP
