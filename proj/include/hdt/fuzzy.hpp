#pragma once

#include <span>
#include <vector>

#include "hdt/domain.hpp"
#include "hdt/sampled_function.hpp"

namespace hdt {

/// Uniform triangular partition of [a, b]: n_bases hat functions with nodes
/// x_1 = a, ..., x_n = b and spacing (b-a)/(n_bases-1); A_s peaks at its
/// node and vanishes outside the two adjacent cells.
struct FuzzyPartition {
  Domain1D domain;
  std::size_t n_bases;

  double spacing() const noexcept {
    return domain.length() / static_cast<double>(n_bases - 1);
  }
  double node(std::size_t s) const noexcept {
    return domain.a + static_cast<double>(s) * spacing();
  }
  double basis(std::size_t s, double x) const noexcept;
};

/// Component s is the A_s-weighted mean of f around node s (ratio of
/// integrals, midpoint quadrature with shared nodes so constants are
/// reproduced exactly).
std::vector<double> fuzzy_transform(const SampledFunction& f,
                                    const FuzzyPartition& partition,
                                    std::size_t points_per_cell = 64);

/// Weighted basis sum sum_s G_s A_s(x); piecewise-linear interpolation of
/// the components for triangular bases.
double fuzzy_inverse(std::span<const double> components,
                     const FuzzyPartition& partition, double x);

}  // namespace hdt
