#pragma once

#include "hdt/hypervector.hpp"
#include "hdt/normalization.hpp"
#include "hdt/quadrature.hpp"
#include "hdt/sampled_function.hpp"

namespace hdt {

/// F = sum_j w_j f(x_j) * encode_normalized(x_j), accumulated per component
/// in fixed node order (compensated). Throws when f evaluates non-finite at
/// a node, naming the node.
HyperVector forward(const SampledFunction& f, const NormalizedEncoder& enc,
                    const Quadrature& q);

/// Point-mass transform: encode_normalized(x).
HyperVector transform_dirac(const NormalizedEncoder& enc, double x);

/// Transform of the indicator of [c, d) (d == b taken closed), on the given
/// quadrature. Half-open so disjoint splits add exactly.
HyperVector transform_indicator(const NormalizedEncoder& enc, double c,
                                double d, const Quadrature& q);

/// f~(x) = inner_scaled(F, encode_normalized(x)).
double inverse_eval(const HyperVector& F, const NormalizedEncoder& enc,
                    double x);

/// Deterministic infinite-D smoothing of f at x:
/// sum_j w_j f(x_j) k(x, x_j) / (n(x) n(x_j)). Noise-free reference for the
/// finite-D inverse transform.
double smooth_oracle(const SampledFunction& f, const NormalizedEncoder& enc,
                     double x, const Quadrature& q);

namespace serial {
/// Reference single-thread path; bit-identical to hdt::forward.
HyperVector forward(const SampledFunction& f, const NormalizedEncoder& enc,
                    const Quadrature& q);
}  // namespace serial

}  // namespace hdt
