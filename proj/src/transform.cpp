#include "hdt/transform.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "hdt/errors.hpp"
#include "hdt/kernels.hpp"

namespace hdt {

namespace {

// w_j f(x_j) / n(x_j); the per-node scalar multiplying the unnormalized
// encoding in the accumulation.
std::vector<double> node_coefficients(const SampledFunction& f,
                                      const NormalizedEncoder& enc,
                                      const Quadrature& q) {
  std::vector<double> coef(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double x = q.nodes()[j];
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw NumericalError("forward: f evaluates non-finite at node " +
                           std::to_string(j) + " (x = " + std::to_string(x) +
                           ")");
    }
    coef[j] = q.weights()[j] * v / enc.norm_at(x);
  }
  return coef;
}

// Accumulate one component block over all nodes, Kahan, fixed node order.
void accumulate_block(const Encoder& base, std::span<const double> nodes,
                      std::span<const double> coef, std::size_t begin,
                      std::size_t end, double* out) {
  const std::size_t len = end - begin;
  std::vector<double> comp(len, 0.0);
  std::vector<double> tmp(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    base.encode_span(nodes[j], begin, end, tmp.data());
    const double c = coef[j];
    for (std::size_t i = 0; i < len; ++i) {
      const double term = c * tmp[i] - comp[i];
      const double next = out[i] + term;
      comp[i] = (next - out[i]) - term;
      out[i] = next;
    }
  }
}

HyperVector forward_impl(const SampledFunction& f, const NormalizedEncoder& enc,
                         const Quadrature& q, bool parallel) {
  const std::vector<double> coef = node_coefficients(f, enc, q);
  const std::size_t dim = enc.dim();
  std::vector<double> out(dim);
  const std::int64_t nblocks =
      static_cast<std::int64_t>((dim + kSumBlock - 1) / kSumBlock);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
      const std::size_t begin = static_cast<std::size_t>(blk) * kSumBlock;
      const std::size_t end = std::min(begin + kSumBlock, dim);
      accumulate_block(enc.base(), q.nodes(), coef, begin, end,
                       out.data() + begin);
    }
  } else {
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
      const std::size_t begin = static_cast<std::size_t>(blk) * kSumBlock;
      const std::size_t end = std::min(begin + kSumBlock, dim);
      accumulate_block(enc.base(), q.nodes(), coef, begin, end,
                       out.data() + begin);
    }
  }
  return HyperVector(std::move(out));
}

}  // namespace

HyperVector forward(const SampledFunction& f, const NormalizedEncoder& enc,
                    const Quadrature& q) {
  return forward_impl(f, enc, q, /*parallel=*/true);
}

namespace serial {
HyperVector forward(const SampledFunction& f, const NormalizedEncoder& enc,
                    const Quadrature& q) {
  return forward_impl(f, enc, q, /*parallel=*/false);
}
}  // namespace serial

HyperVector transform_dirac(const NormalizedEncoder& enc, double x) {
  return enc.encode_normalized(x);
}

HyperVector transform_indicator(const NormalizedEncoder& enc, double c,
                                double d, const Quadrature& q) {
  const Domain1D domain = enc.domain();
  if (!(domain.a <= c && c < d && d <= domain.b)) {
    throw ConfigError("transform_indicator: need a <= c < d <= b");
  }
  const bool closed_right = (d == domain.b);
  const SampledFunction ind =
      SampledFunction::from_function([c, d, closed_right](double x) {
        const bool in = x >= c && (x < d || (closed_right && x <= d));
        return in ? 1.0 : 0.0;
      });
  return forward(ind, enc, q);
}

double inverse_eval(const HyperVector& F, const NormalizedEncoder& enc,
                    double x) {
  if (F.dim() != enc.dim()) {
    throw DimensionMismatchError("inverse_eval: vector does not match encoder "
                                 "dimension");
  }
  std::vector<double> delta(enc.dim());
  enc.encode_normalized_into(x, delta);
  return dot_scaled(F.values(), delta);
}

double smooth_oracle(const SampledFunction& f, const NormalizedEncoder& enc,
                     double x, const Quadrature& q) {
  const double nx = enc.norm_at(x);
  std::vector<double> terms(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double xj = q.nodes()[j];
    const double v = f(xj);
    if (!std::isfinite(v)) {
      throw NumericalError("smooth_oracle: f evaluates non-finite at node " +
                           std::to_string(j));
    }
    terms[j] = q.weights()[j] * v * enc.base().expected_kernel(x, xj) /
               (nx * enc.norm_at(xj));
  }
  return kahan_total(terms);
}

}  // namespace hdt
