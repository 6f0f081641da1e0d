#include "hdt/presets.hpp"

#include <cmath>

#include "hdt/errors.hpp"

namespace hdt {

std::function<double(double)> function_preset(const std::string& name) {
  if (name == "one") return [](double) { return 1.0; };
  if (name == "identity") return [](double x) { return x; };
  if (name == "square") return [](double x) { return x * x; };
  if (name == "sin") return [](double x) { return std::sin(x); };
  if (name == "cos") return [](double x) { return std::cos(x); };
  if (name == "xsin10x") return [](double x) { return x * std::sin(10.0 * x); };
  if (name == "step_half") return [](double x) { return x < 0.5 ? 0.0 : 1.0; };
  if (name == "twothirdsx") return [](double x) { return 2.0 * x / 3.0; };
  throw ConfigError("unknown function preset '" + name + "'");
}

const std::vector<std::string>& function_preset_names() {
  static const std::vector<std::string> names = {
      "one", "identity", "square", "sin",
      "cos", "xsin10x",  "step_half", "twothirdsx"};
  return names;
}

}  // namespace hdt
