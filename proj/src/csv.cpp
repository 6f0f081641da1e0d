#include "hdt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hdt/errors.hpp"

namespace hdt {

std::string format_full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvTable::meta(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void CsvTable::meta(std::string key, double value) {
  metadata.emplace_back(std::move(key), format_full_precision(value));
}

void CsvTable::meta(std::string key, long long value) {
  metadata.emplace_back(std::move(key), std::to_string(value));
}

std::string format_csv(const CsvTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << format_full_precision(row[c]);
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  file << format_csv(table);
  if (!file) {
    throw IoError("write failed for '" + path + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_csv_metadata(
    const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::vector<std::pair<std::string, std::string>> metadata;
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty() || line[0] != '#') break;
    std::size_t start = 1;
    while (start < line.size() && line[start] == ' ') ++start;
    const std::size_t eq = line.find('=', start);
    if (eq == std::string::npos) continue;
    metadata.emplace_back(line.substr(start, eq - start), line.substr(eq + 1));
  }
  return metadata;
}

}  // namespace hdt
