#include "dsq/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dsq/error.hpp"

namespace dsq {

void CsvTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw ParameterError("csv row width does not match header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::filesystem::path meta_path(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".meta");
    return p;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path.string());
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    if (!out) throw ParameterError("write failed for " + path.string());
}

void write_meta(const std::filesystem::path& csv_path, const MetaList& meta) {
    const auto p = meta_path(csv_path);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + p.string());
    for (const auto& [k, v] : meta) out << k << '=' << v << '\n';
    if (!out) throw ParameterError("write failed for " + p.string());
}

}  // namespace dsq
