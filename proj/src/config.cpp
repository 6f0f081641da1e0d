#include "hdt/config.hpp"

#include <fstream>

#include "hdt/errors.hpp"

namespace hdt {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_value_file(
    const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config file " + path + ": line " +
                        std::to_string(lineno) + " is not key=value");
    }
    std::string key = trim(trimmed.substr(0, eq));
    std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config file " + path + ": empty key on line " +
                        std::to_string(lineno));
    }
    pairs.emplace_back(std::move(key), std::move(value));
  }
  return pairs;
}

}  // namespace hdt
