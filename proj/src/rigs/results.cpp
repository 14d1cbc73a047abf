#include "demcal/rigs/results.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::rigs {

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_record(std::ostream& os, const RigRecord& r) {
    os << quote(r.rig) << ',' << r.replicate << ',' << r.seed << ',' << quote(r.parameter_json) << ','
       << std::setprecision(17) << r.response << ',' << quote(r.unit) << '\n';
}

void append_records(const std::filesystem::path& file, const std::vector<RigRecord>& records) {
    const bool fresh = !std::filesystem::exists(file) || std::filesystem::file_size(file) == 0;
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::app);
    detail::require(static_cast<bool>(os), "cannot open results file " + file.string());
    if (fresh) os << kResultsHeader << '\n';
    for (const auto& r : records) write_record(os, r);
}

std::vector<RigRecord> read_records(const std::filesystem::path& file) {
    std::ifstream is(file);
    detail::require(static_cast<bool>(is), "cannot open results file " + file.string());
    std::string line;
    std::getline(is, line);
    detail::require(line == kResultsHeader, "unexpected results header in " + file.string());
    std::vector<RigRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        detail::require(f.size() == 6, "malformed results row: " + line);
        RigRecord r;
        r.rig = f[0];
        r.replicate = std::stoi(f[1]);
        r.seed = std::stoull(f[2]);
        r.parameter_json = f[3];
        r.response = std::stod(f[4]);
        r.unit = f[5];
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace demcal::rigs
