#include "hdt/fuzzy.hpp"

#include <algorithm>
#include <cmath>

#include "hdt/errors.hpp"

namespace hdt {

double FuzzyPartition::basis(std::size_t s, double x) const noexcept {
  const double v = 1.0 - std::abs(x - node(s)) / spacing();
  return v > 0.0 ? v : 0.0;
}

std::vector<double> fuzzy_transform(const SampledFunction& f,
                                    const FuzzyPartition& partition,
                                    std::size_t points_per_cell) {
  if (partition.n_bases < 2) {
    throw ConfigError("fuzzy_transform: need at least 2 nodes");
  }
  if (points_per_cell == 0) {
    throw ConfigError("fuzzy_transform: need at least 1 point per cell");
  }
  const std::size_t n = partition.n_bases;
  const double h = partition.spacing();
  std::vector<double> components(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double lo = std::max(partition.domain.a, partition.node(s) - h);
    const double hi = std::min(partition.domain.b, partition.node(s) + h);
    const std::size_t cells =
        points_per_cell * static_cast<std::size_t>(std::lround((hi - lo) / h));
    const double dx = (hi - lo) / static_cast<double>(cells);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      const double x = lo + (static_cast<double>(j) + 0.5) * dx;
      const double a = partition.basis(s, x);
      num += f(x) * a * dx;
      den += a * dx;
    }
    components[s] = num / den;
  }
  return components;
}

double fuzzy_inverse(std::span<const double> components,
                     const FuzzyPartition& partition, double x) {
  if (components.size() != partition.n_bases) {
    throw DimensionMismatchError(
        "fuzzy_inverse: component count does not match the partition");
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < components.size(); ++s) {
    const double a = partition.basis(s, x);
    if (a > 0.0) acc += components[s] * a;
  }
  return acc;
}

}  // namespace hdt
