#pragma once

#include "hdt/hypervector.hpp"
#include "hdt/normalization.hpp"

namespace hdt {

/// How to differentiate the normalized encoding.
struct DerivativeSpec {
  enum class Method { finite_difference, exact_sigmoid };

  int order = 1;
  Method method = Method::finite_difference;
  double step = 0.0;  // finite-difference h; ignored for exact_sigmoid

  static DerivativeSpec fd(int order, double h) {
    return {order, Method::finite_difference, h};
  }
  static DerivativeSpec exact_sigmoid(int order) {
    return {order, Method::exact_sigmoid, 0.0};
  }
  /// Same method/step, different order; used when assembling equation rows.
  DerivativeSpec with_order(int new_order) const {
    DerivativeSpec s = *this;
    s.order = new_order;
    return s;
  }
};

/// d^n/dx^n of the normalized encoding at x.
///
/// finite_difference: central stencils for orders 1 and 2, switching to
/// one-sided stencils of matching accuracy near the boundary; higher orders
/// by composing central stencils (no one-sided fallback). The normalization
/// n(x) is differenced through along with the components.
///
/// exact_sigmoid: analytic component derivatives (orders 1 and 2, sigmoid
/// encoders only), combined with finite-difference derivatives of the
/// gridded n via the quotient rule.
HyperVector encoding_derivative(const NormalizedEncoder& enc, double x,
                                const DerivativeSpec& spec);

/// d^n/dx^n f~(x) = inner_scaled(F, encoding_derivative(x)). For finite
/// differences this equals the same stencil applied to inverse_eval.
double derivative_eval(const HyperVector& F, const NormalizedEncoder& enc,
                       double x, const DerivativeSpec& spec);

/// integral of f~ = inner_scaled(F, one_X) with one_X the transform of the
/// constant one function.
double integral(const HyperVector& F, const HyperVector& one_X);

/// Stencil offsets/coefficients used for a finite-difference request;
/// exposed for tests and the row builders.
struct Stencil {
  std::vector<double> offsets;
  std::vector<double> coefficients;
};
Stencil fd_stencil(int order, double h, double x, Domain1D domain);

}  // namespace hdt
