#include "phlab/cli/output.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phlab/error.hpp"

namespace phlab::cli {

std::string format_real(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error(ErrorKind::io_error, "number formatting failed");
  return std::string(buf, p);
}

void write_csv(const std::string& path, const std::vector<std::string>& config_lines, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot write '" + path + "'");
  out << "# schema_version = " << schema_version << '\n';
  for (const auto& l : config_lines) out << "# " << l << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::io_error, "write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size()) throw Error(ErrorKind::config_parse, "ragged CSV row", row_no);
    std::vector<double> r;
    for (const auto& c : cells) {
      double x = 0.0;
      const auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), x);
      if (ec != std::errc() || p != c.data() + c.size()) {
        throw Error(ErrorKind::config_parse, "non-numeric CSV cell '" + c + "'", row_no);
      }
      r.push_back(x);
    }
    t.rows.push_back(std::move(r));
  }
  if (t.columns.empty()) throw Error(ErrorKind::config_parse, "CSV has no header row");
  return t;
}

void write_json(const std::string& path, const nlohmann::ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::io_error, "write to '" + path + "' failed");
}

std::string output_path(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot create directory '" + dir + "': " + ec.message());
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace phlab::cli
