#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hdt {

/// Parse a flat key=value file: one pair per line, '#' starts a comment,
/// blank lines ignored, whitespace around keys and values trimmed.
std::vector<std::pair<std::string, std::string>> parse_key_value_file(
    const std::string& path);

}  // namespace hdt
