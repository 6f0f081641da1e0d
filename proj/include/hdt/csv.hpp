#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hdt {

/// In-memory CSV with a '#'-prefixed key=value metadata block, a header
/// row, and numeric data rows. Numbers are written with %.17g so files
/// round-trip exactly and reruns are byte-comparable.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void meta(std::string key, std::string value);
  void meta(std::string key, double value);
  void meta(std::string key, long long value);
};

std::string format_csv(const CsvTable& table);
void write_csv(const CsvTable& table, const std::string& path);

/// Parse the metadata block of a CSV produced by write_csv.
std::vector<std::pair<std::string, std::string>> read_csv_metadata(
    const std::string& path);

std::string format_full_precision(double v);

}  // namespace hdt
