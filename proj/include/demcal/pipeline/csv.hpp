#ifndef DEMCAL_PIPELINE_CSV_HPP
#define DEMCAL_PIPELINE_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace demcal::pipeline {

/// A headed CSV of numbers.
struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> values(std::size_t column) const;
};

/// Blank lines and lines starting with '#' are skipped. Throws InvalidInput
/// on ragged rows or non-numeric cells.
NumericTable read_numeric_csv(const std::filesystem::path& file);

void write_numeric_csv(const std::filesystem::path& file, const NumericTable& table);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_CSV_HPP
