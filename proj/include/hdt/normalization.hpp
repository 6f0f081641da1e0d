#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hdt/encoder.hpp"

namespace hdt {

/// Positive gridded function n(x) with linear interpolation between grid
/// points and clamping at the ends.
class NormalizationFn {
 public:
  NormalizationFn(std::vector<double> grid, std::vector<double> values);
  static NormalizationFn constant(double value, Domain1D domain);

  double eval(double x) const;
  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double grid_spacing() const noexcept { return grid_[1] - grid_[0]; }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Per-iteration record of the successive-approximation solve.
struct NormalizationTrace {
  std::vector<double> grid;
  std::vector<std::vector<double>> n_iterates;      // n_0 .. n_T
  std::vector<std::vector<double>> tilde_iterates;  // 1~ evaluated at each n_i
  std::vector<double> residuals;                    // max_j |1~_i(x_j) - 1|
};

/// M equidistant points spanning [a, b], endpoints included.
std::vector<double> uniform_grid(Domain1D domain, std::size_t m);

/// n_0(x_j) = sqrt( integral of expected_kernel(x_j, .) ), composite
/// trapezoid on the grid itself. Throws NumericalError when the kernel
/// integral is non-positive at some grid point.
NormalizationFn initial_guess(const Encoder& enc, std::span<const double> grid);

/// 1~(x_j) = integral of expected_kernel(x_j, x') / (n(x_j) n(x')),
/// composite trapezoid on the grid.
std::vector<double> tilde_one(const Encoder& enc, const NormalizationFn& norm,
                              std::span<const double> grid);

/// Successive approximation n_{i+1} = n_i * sqrt(1~_i) for a fixed number
/// of iterations. Throws NumericalError when the residual grows three
/// iterations in a row. The final residual is trace->residuals.back().
NormalizationFn solve_normalization(const Encoder& enc,
                                    std::size_t grid_size = 100,
                                    int iterations = 10,
                                    NormalizationTrace* trace = nullptr);

/// Tolerance-controlled variant: stops as soon as the residual drops below
/// `tolerance` (or after max_iterations).
NormalizationFn solve_normalization_tol(const Encoder& enc, double tolerance,
                                        std::size_t grid_size = 100,
                                        int max_iterations = 200,
                                        NormalizationTrace* trace = nullptr);

/// Encoder paired with its normalization: components are divided by n(x).
class NormalizedEncoder {
 public:
  NormalizedEncoder(std::shared_ptr<const Encoder> base, NormalizationFn norm);

  const Encoder& base() const noexcept { return *base_; }
  const std::shared_ptr<const Encoder>& base_ptr() const noexcept {
    return base_;
  }
  const NormalizationFn& norm() const noexcept { return norm_; }

  std::size_t dim() const noexcept { return base_->dim(); }
  Domain1D domain() const noexcept { return base_->domain(); }
  double length_scale() const noexcept { return base_->length_scale(); }
  double norm_at(double x) const { return norm_.eval(x); }

  void encode_normalized_into(double x, std::span<double> out) const;
  HyperVector encode_normalized(double x) const;

 private:
  std::shared_ptr<const Encoder> base_;
  NormalizationFn norm_;
};

/// Solve the normalization for `enc` and pair them up.
NormalizedEncoder make_normalized(std::shared_ptr<const Encoder> enc,
                                  std::size_t grid_size = 100,
                                  int iterations = 10);

}  // namespace hdt
