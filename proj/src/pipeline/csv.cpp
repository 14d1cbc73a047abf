#include "demcal/pipeline/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::pipeline {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::size_t NumericTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    detail::fail(ErrorCode::InvalidInput, "no column '" + name + "'");
}

std::vector<double> NumericTable::values(std::size_t column) const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.at(column));
    return out;
}

NumericTable read_numeric_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    detail::require(static_cast<bool>(in), "cannot read " + file.string());
    NumericTable t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto cells = split(s);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        std::ostringstream where;
        where << file.string() << ':' << line_no;
        detail::require(cells.size() == t.header.size(), where.str() + ": expected " + std::to_string(t.header.size()) + " cells");
        std::vector<double> row;
        for (const auto& c : cells) {
            double v = 0.0;
            const auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            detail::require(ec == std::errc{} && p == c.data() + c.size(), where.str() + ": not a number '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    detail::require(!t.header.empty(), file.string() + " has no header");
    return t;
}

void write_numeric_csv(const std::filesystem::path& file, const NumericTable& table) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    detail::require(static_cast<bool>(out), "cannot write " + file.string());
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    out.precision(12);
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    }
}

}  // namespace demcal::pipeline
