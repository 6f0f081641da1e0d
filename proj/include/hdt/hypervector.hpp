#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hdt {

/// Dense D-dimensional real vector. Immutable after construction; all
/// components are finite by construction. Information lives in the scaled
/// inner products, not in individual components.
class HyperVector {
 public:
  /// Takes ownership of `values`. Throws if empty or any value is non-finite.
  explicit HyperVector(std::vector<double> values);

  static HyperVector zeros(std::size_t dim);

  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// (1/D) * sum_i u_i v_i. Bit-reproducible for any thread count.
double inner_scaled(const HyperVector& u, const HyperVector& v);

/// Component-wise product (binding). Commutative and associative.
HyperVector bind(const HyperVector& u, const HyperVector& v);

/// alpha*u + beta*v.
HyperVector axpy(double alpha, const HyperVector& u, double beta,
                 const HyperVector& v);

}  // namespace hdt
