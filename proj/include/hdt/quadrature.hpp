#pragma once

#include <span>
#include <vector>

#include "hdt/domain.hpp"

namespace hdt {

class NormalizedEncoder;

/// Nodes and positive weights of a composite quadrature rule on [a, b].
class Quadrature {
 public:
  Quadrature(std::vector<double> nodes, std::vector<double> weights);

  /// Composite midpoint rule with n cells; nodes avoid the endpoints.
  static Quadrature midpoint(Domain1D domain, std::size_t n);
  /// Composite trapezoid rule with n nodes including both endpoints.
  static Quadrature trapezoid(Domain1D domain, std::size_t n);
  /// Midpoint rule with ceil(20 * (b-a) / length_scale) cells, so the
  /// integrand is resolved on the scale the kernel varies on.
  static Quadrature default_for(const NormalizedEncoder& enc);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// n equidistant points spanning [a, b], endpoints included.
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace hdt
