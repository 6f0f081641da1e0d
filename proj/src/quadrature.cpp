#include "hdt/quadrature.hpp"

#include <cmath>

#include "hdt/errors.hpp"
#include "hdt/normalization.hpp"

namespace hdt {

Quadrature::Quadrature(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw ConfigError("Quadrature: nodes and weights must match, size >= 1");
  }
  for (std::size_t j = 0; j + 1 < nodes_.size(); ++j) {
    if (!(nodes_[j] < nodes_[j + 1])) {
      throw ConfigError("Quadrature: nodes must be strictly increasing");
    }
  }
  for (const double w : weights_) {
    if (!(w > 0.0)) throw ConfigError("Quadrature: weights must be positive");
  }
}

Quadrature Quadrature::midpoint(Domain1D domain, std::size_t n) {
  if (n == 0) throw ConfigError("Quadrature::midpoint: need n >= 1 cells");
  const double h = domain.length() / static_cast<double>(n);
  std::vector<double> nodes(n), weights(n, h);
  for (std::size_t j = 0; j < n; ++j) {
    nodes[j] = domain.a + (static_cast<double>(j) + 0.5) * h;
  }
  return Quadrature(std::move(nodes), std::move(weights));
}

Quadrature Quadrature::trapezoid(Domain1D domain, std::size_t n) {
  if (n < 2) throw ConfigError("Quadrature::trapezoid: need n >= 2 nodes");
  const double h = domain.length() / static_cast<double>(n - 1);
  std::vector<double> nodes = linspace(domain.a, domain.b, n);
  std::vector<double> weights(n, h);
  weights.front() = h / 2.0;
  weights.back() = h / 2.0;
  return Quadrature(std::move(nodes), std::move(weights));
}

Quadrature Quadrature::default_for(const NormalizedEncoder& enc) {
  const Domain1D domain = enc.domain();
  const double cells = std::ceil(20.0 * domain.length() / enc.length_scale());
  return midpoint(domain, static_cast<std::size_t>(cells));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2) throw ConfigError("linspace: need n >= 2 points");
  std::vector<double> xs(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = a + static_cast<double>(j) * h;
  }
  xs.back() = b;
  return xs;
}

}  // namespace hdt
