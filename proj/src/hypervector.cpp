#include "hdt/hypervector.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "hdt/errors.hpp"
#include "hdt/kernels.hpp"

namespace hdt {

namespace {

void require_same_dim(const HyperVector& u, const HyperVector& v,
                      const char* op) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatchError(std::string(op) + ": incompatible bases (" +
                                 std::to_string(u.dim()) + " vs " +
                                 std::to_string(v.dim()) + ")");
  }
}

}  // namespace

HyperVector::HyperVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw DimensionMismatchError("HyperVector: dimension must be >= 1");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NumericalError("HyperVector: non-finite component at index " +
                           std::to_string(i));
    }
  }
}

HyperVector HyperVector::zeros(std::size_t dim) {
  return HyperVector(std::vector<double>(dim, 0.0));
}

double inner_scaled(const HyperVector& u, const HyperVector& v) {
  require_same_dim(u, v, "inner_scaled");
  return dot_scaled(u.values(), v.values());
}

HyperVector bind(const HyperVector& u, const HyperVector& v) {
  require_same_dim(u, v, "bind");
  std::vector<double> out(u.dim());
  const std::int64_t n = static_cast<std::int64_t>(u.dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] *
                                       v[static_cast<std::size_t>(i)];
  }
  return HyperVector(std::move(out));
}

HyperVector axpy(double alpha, const HyperVector& u, double beta,
                 const HyperVector& v) {
  require_same_dim(u, v, "axpy");
  std::vector<double> out(u.dim());
  const std::int64_t n = static_cast<std::int64_t>(u.dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = alpha * u[static_cast<std::size_t>(i)] +
                                       beta * v[static_cast<std::size_t>(i)];
  }
  return HyperVector(std::move(out));
}

}  // namespace hdt
