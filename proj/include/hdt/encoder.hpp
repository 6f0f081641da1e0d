#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>

#include "hdt/domain.hpp"
#include "hdt/hypervector.hpp"

namespace hdt {

using ConfigMap = std::map<std::string, std::string>;

/// Seeded realization of a stochastic process over an interval.
///
/// Component s at point x is a pure function of (seed, s, x): repeated
/// evaluations agree bitwise on every platform and under any thread count.
/// Each encoder carries the closed-form limit kernel of its process,
/// lim_{D->inf} <phi(x), phi(x')>, used by normalization and by the
/// deterministic smoothing oracle.
class Encoder {
 public:
  virtual ~Encoder() = default;

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Domain1D domain() const noexcept { return domain_; }

  /// Distance beyond which the expected kernel vanishes.
  virtual double length_scale() const noexcept = 0;

  /// Closed-form limit kernel of the process.
  virtual double expected_kernel(double x, double xp) const = 0;

  /// Fill components [begin, end) at point x into out[0 .. end-begin).
  /// No domain check; callers validate once.
  virtual void encode_span(double x, std::size_t begin, std::size_t end,
                           double* out) const = 0;

  /// Serializable parameter set (keys: type, a, b, lambda, dim, seed, ...).
  virtual ConfigMap to_config() const = 0;

  /// All D components at x (parallel over component blocks). Throws
  /// OutOfDomainError when x lies outside [a, b].
  void encode_into(double x, std::span<double> out) const;
  HyperVector encode(double x) const;

  /// Serial reference path for tests and benchmarks; bit-identical to
  /// encode_into by construction.
  void encode_into_serial(double x, std::span<double> out) const;

 protected:
  Encoder(Domain1D domain, std::size_t dim, std::uint64_t seed);
  void require_in_domain(double x) const;

 private:
  Domain1D domain_;
  std::size_t dim_;
  std::uint64_t seed_;
};

/// Piecewise-constant {-1,+1} process on an anchor lattice with spacing
/// lambda. Component s holds the Rademacher anchor value r_s(k) on
/// [x_k + lambda*u_s, x_{k+1} + lambda*u_s), where u_s is the component's
/// switch phase; the limit kernel is max(0, 1 - |x-x'|/lambda).
class IntervalStepEncoder : public Encoder {
 public:
  IntervalStepEncoder(Domain1D domain, double lambda, std::size_t dim,
                      std::uint64_t seed);
  IntervalStepEncoder(Domain1D domain, double lambda, std::size_t dim,
                      std::uint64_t seed, double anchor_origin);

  double lambda() const noexcept { return lambda_; }
  double anchor_origin() const noexcept { return anchor_origin_; }

  double length_scale() const noexcept override { return lambda_; }
  double expected_kernel(double x, double xp) const override;
  void encode_span(double x, std::size_t begin, std::size_t end,
                   double* out) const override;
  ConfigMap to_config() const override;

  /// Anchor vector r(x_k) for lattice index k (components [begin, end)).
  void anchor_span(std::int64_t k, std::size_t begin, std::size_t end,
                   double* out) const;

 private:
  double lambda_;
  double anchor_origin_;
};

/// Step encoder with the transitions replaced by logistic ramps of width
/// tau; smooth in x, with analytic derivatives up to order 2. Shares the
/// anchor values and switch points of the step encoder with the same seed.
class SigmoidEncoder : public Encoder {
 public:
  SigmoidEncoder(Domain1D domain, double lambda, std::size_t dim,
                 std::uint64_t seed);
  SigmoidEncoder(Domain1D domain, double lambda, std::size_t dim,
                 std::uint64_t seed, double tau, double anchor_origin);

  double lambda() const noexcept { return lambda_; }
  double tau() const noexcept { return tau_; }
  double anchor_origin() const noexcept { return anchor_origin_; }

  double length_scale() const noexcept override { return lambda_; }
  /// tau -> 0 limit kernel (triangular).
  double expected_kernel(double x, double xp) const override;
  void encode_span(double x, std::size_t begin, std::size_t end,
                   double* out) const override;
  ConfigMap to_config() const override;

  /// Analytic d^order/dx^order of the unnormalized components, order in
  /// {1, 2}.
  void derivative_span(double x, int order, std::size_t begin,
                       std::size_t end, double* out) const;

 private:
  double lambda_;
  double tau_;
  double anchor_origin_;
};

/// Step process on [a, b] with periodic boundary conditions:
/// lambda = (b-a)/n_cells, anchors wrap so encode(a) == encode(b) bitwise,
/// and the limit kernel is triangular in the wrap-around metric.
class PeriodicEncoder : public Encoder {
 public:
  PeriodicEncoder(Domain1D domain, std::size_t n_cells, std::size_t dim,
                  std::uint64_t seed);

  std::size_t n_cells() const noexcept { return n_cells_; }
  double lambda() const noexcept { return lambda_; }

  /// Wrap-around distance min(|x-x'|, (b-a) - |x-x'|).
  double wrapped_distance(double x, double xp) const noexcept;

  double length_scale() const noexcept override { return lambda_; }
  double expected_kernel(double x, double xp) const override;
  void encode_span(double x, std::size_t begin, std::size_t end,
                   double* out) const override;
  ConfigMap to_config() const override;

 private:
  std::size_t n_cells_;
  double lambda_;
};

/// Mixing wrapper: each component is, once and for all, either the base
/// component (probability 1-eps) or an independent Rademacher function of
/// x (probability eps). Expected kernel:
/// (1-eps) * k_base(x,x') + eps * delta_{x,x'}. Any eps > 0 makes the
/// kernel strictly positive definite.
class EpsilonMixEncoder : public Encoder {
 public:
  EpsilonMixEncoder(std::shared_ptr<const Encoder> base, double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  const Encoder& base() const noexcept { return *base_; }

  double length_scale() const noexcept override;
  double expected_kernel(double x, double xp) const override;
  void encode_span(double x, std::size_t begin, std::size_t end,
                   double* out) const override;
  ConfigMap to_config() const override;

 private:
  std::shared_ptr<const Encoder> base_;
  double epsilon_;
};

/// Which kernel the triple encoder realizes; selects the order of the
/// sum/product construction and the matching length-scale regime.
enum class TripleKernel {
  product_all,  // delta1*delta2*delta3            (l < 1/3)
  pairwise,     // mean of pairwise delta products (1/3 <= l < 2/3)
  slotwise,     // mean of per-slot deltas         (l >= 2/3)
};

/// Encoder for a finite product set U x V x W under the counting measure.
/// In the slotwise mode, encode(x) = (r1(x1) + r2(x2) + r3(x3)) / sqrt(3)
/// with Rademacher slot vectors; the limit kernel is the matching
/// coefficient (delta1 + delta2 + delta3)/3.
class DiscreteTripleEncoder {
 public:
  using Index3 = std::array<std::size_t, 3>;

  DiscreteTripleEncoder(std::array<std::size_t, 3> sizes, std::size_t dim,
                        std::uint64_t seed,
                        TripleKernel kernel = TripleKernel::slotwise);

  static TripleKernel kernel_for_length_scale(double l);

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::array<std::size_t, 3> sizes() const noexcept { return sizes_; }
  TripleKernel kernel() const noexcept { return kernel_; }

  HyperVector encode(const Index3& x) const;
  double expected_kernel(const Index3& x, const Index3& xp) const;

  /// Constant normalization n with n^2 = integral of the kernel under the
  /// counting measure; closed form per mode.
  double normalization_constant() const;

  /// d(x,x') = 1 - (delta1 + delta2 + delta3)/3, values in {0,1/3,2/3,1}.
  static double metric(const Index3& x, const Index3& xp) noexcept;

  ConfigMap to_config() const;

 private:
  void check_index(const Index3& x) const;

  std::array<std::size_t, 3> sizes_;
  std::size_t dim_;
  std::uint64_t seed_;
  TripleKernel kernel_;
};

/// Rebuild an interval encoder from its serialized parameters. A nonzero
/// "epsilon" key wraps the base encoder in an EpsilonMixEncoder.
std::shared_ptr<const Encoder> make_encoder_from_config(const ConfigMap& config);

}  // namespace hdt
