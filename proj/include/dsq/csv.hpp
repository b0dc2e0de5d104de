#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace dsq {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

using MetaList = std::vector<std::pair<std::string, std::string>>;

// Formats with 12 significant digits; NaN and infinities as nan / inf / -inf.
std::string format_number(double v);

// Writes `path` and `path` with its extension replaced by `.meta`.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
void write_meta(const std::filesystem::path& csv_path, const MetaList& meta);

std::filesystem::path meta_path(const std::filesystem::path& csv_path);

}  // namespace dsq
