#pragma once

#include <functional>
#include <span>

#include "hdt/calculus.hpp"
#include "hdt/csv.hpp"
#include "hdt/hypervector.hpp"
#include "hdt/normalization.hpp"
#include "hdt/quadrature.hpp"

namespace hdt {

enum class Axis { X, Y };

/// Pair of normalized encoders over independent samples; the joint encoding
/// of (x, y) is the component-wise product of the axis encodings. Refuses
/// construction when both axes share a seed (the samples must be
/// independent for the product kernel to factorize).
class ProductEncoder {
 public:
  ProductEncoder(NormalizedEncoder enc_x, NormalizedEncoder enc_y);

  const NormalizedEncoder& axis(Axis which) const noexcept {
    return which == Axis::X ? enc_x_ : enc_y_;
  }
  std::size_t dim() const noexcept { return enc_x_.dim(); }

  HyperVector encode_pair(double x, double y) const;

 private:
  NormalizedEncoder enc_x_;
  NormalizedEncoder enc_y_;
};

/// Bivariate transform by iterated quadrature, x-outer / y-inner fixed
/// order: F = sum_i sum_j w_i w_j f(x_i, y_j) encode_pair(x_i, y_j).
/// Throws on non-finite f values, naming the node coordinates.
HyperVector forward2(const std::function<double(double, double)>& f,
                     const ProductEncoder& pe, const Quadrature& q_x,
                     const Quadrature& q_y);

/// integral over Y of f~(x, .): inner_scaled(F, enc_x(x) ⊙ one_Y).
double marginal_eval(const HyperVector& F, const ProductEncoder& pe, double x,
                     const HyperVector& one_Y);

/// Fix one coordinate: bind(F, encoding of `value` on `axis`); the result
/// is read against the other axis's encoder.
HyperVector condition(const HyperVector& F, const ProductEncoder& pe,
                      Axis axis, double value);

/// Partial derivative of f~ along `wrt` at (x, y).
double partial_derivative_eval(const HyperVector& F, const ProductEncoder& pe,
                               double x, double y, Axis wrt,
                               const DerivativeSpec& spec);

/// Empirical centering of the unnormalized process: the average over
/// sampled domain points of |across-component mean of phi(x)|. For a
/// zero-centered process this is ~1/sqrt(dim); values beyond 4/sqrt(dim)
/// suggest the product-kernel factorization will be biased.
double zero_centering_stat(const Encoder& enc, std::size_t n_points,
                           std::uint64_t sample_seed);

/// Marginal curve x -> integral over Y of f~(x, .), as a CSV table
/// (columns: x, marginal).
CsvTable marginal_curve(const HyperVector& F, const ProductEncoder& pe,
                        const HyperVector& one_Y,
                        std::span<const double> points);

}  // namespace hdt
