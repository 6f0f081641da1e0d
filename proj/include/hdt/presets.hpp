#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hdt {

/// Named test functions used by the CLI and the recovery experiments.
/// Throws ConfigError for unknown names.
std::function<double(double)> function_preset(const std::string& name);

const std::vector<std::string>& function_preset_names();

}  // namespace hdt
