#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace phlab::cli {

inline constexpr int schema_version = 1;

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_real(double x);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// '#' comment header (schema version, then the config lines), a column
/// header row, then the data rows.
void write_csv(const std::string& path, const std::vector<std::string>& config_lines, const CsvTable& table);
CsvTable read_csv(const std::string& path);

/// Round-trip double formatting with two-space indentation, trailing newline.
void write_json(const std::string& path, const nlohmann::ordered_json& doc);

/// Creates the directory (and parents) if needed; returns dir/name.
std::string output_path(const std::string& dir, const std::string& name);

}  // namespace phlab::cli
