#include "hdt/calculus.hpp"

#include <cmath>
#include <map>

#include "hdt/errors.hpp"
#include "hdt/kernels.hpp"

namespace hdt {

namespace {

using OffsetMap = std::map<long, double>;  // offset in units of h -> coeff

// Central building blocks in units of h.
OffsetMap central_first() { return {{-1, -0.5}, {1, 0.5}}; }
OffsetMap central_second() { return {{-1, 1.0}, {0, -2.0}, {1, 1.0}}; }

OffsetMap compose(const OffsetMap& a, const OffsetMap& b) {
  OffsetMap out;
  for (const auto& [oa, ca] : a) {
    for (const auto& [ob, cb] : b) {
      out[oa + ob] += ca * cb;
    }
  }
  return out;
}

// Second-order one-sided stencils (direction +1 for a left boundary,
// -1 for a right boundary).
OffsetMap one_sided(int order, int direction) {
  const long d = direction;
  if (order == 1) {
    return {{0, -1.5 * d}, {1 * d, 2.0 * d}, {2 * d, -0.5 * d}};
  }
  return {{0, 2.0}, {1 * d, -5.0}, {2 * d, 4.0}, {3 * d, -1.0}};
}

bool fits(const OffsetMap& stencil, double x, double h, Domain1D domain) {
  for (const auto& [off, coeff] : stencil) {
    (void)coeff;
    const double p = x + static_cast<double>(off) * h;
    if (!domain.contains(p)) return false;
  }
  return true;
}

OffsetMap build_stencil(int order, double h, double x, Domain1D domain) {
  if (order < 0) throw ConfigError("derivative order must be >= 0");
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be > 0");
  if (order == 0) return {{0, 1.0}};

  OffsetMap central = order % 2 == 0 ? central_second() : central_first();
  for (int n = order % 2 == 0 ? 2 : 1; n < order; n += 2) {
    central = compose(central, central_second());
  }
  if (fits(central, x, h, domain)) return central;

  if (order <= 2) {
    for (const int direction : {+1, -1}) {
      const OffsetMap sided = one_sided(order, direction);
      if (fits(sided, x, h, domain)) return sided;
    }
  }
  throw OutOfDomainError(
      "encoding_derivative: stencil does not fit inside the domain at x = " +
      std::to_string(x) + " (h too large, or no one-sided fallback for order " +
      std::to_string(order) + ")");
}

// d^order/dx^order of the gridded normalization via central differences
// with the grid spacing as step (one-sided at the ends). Coarse grids
// (e.g. a constant normalization) cap the step so stencils fit.
double norm_derivative(const NormalizationFn& norm, double x, int order,
                       Domain1D domain) {
  const double h = std::min(norm.grid_spacing(), domain.length() / 8.0);
  const OffsetMap stencil = build_stencil(order, h, x, domain);
  double acc = 0.0;
  for (const auto& [off, coeff] : stencil) {
    acc += coeff * norm.eval(x + static_cast<double>(off) * h);
  }
  return acc / std::pow(h, order);
}

HyperVector exact_sigmoid_derivative(const NormalizedEncoder& enc, double x,
                                     int order) {
  const auto* sig = dynamic_cast<const SigmoidEncoder*>(&enc.base());
  if (sig == nullptr) {
    throw ConfigError(
        "encoding_derivative: exact_sigmoid requires a sigmoid encoder "
        "(step encoders have no analytic derivative)");
  }
  if (order < 1 || order > 2) {
    throw ConfigError("encoding_derivative: exact_sigmoid supports orders 1 "
                      "and 2");
  }
  const std::size_t dim = enc.dim();
  const Domain1D domain = enc.domain();
  if (!domain.contains(x)) {
    throw OutOfDomainError("encoding_derivative: x outside the domain");
  }

  const double n0 = enc.norm_at(x);
  const double n1 = norm_derivative(enc.norm(), x, 1, domain);

  std::vector<double> phi(dim), d1(dim);
  sig->encode_into(x, phi);
  sig->derivative_span(x, 1, 0, dim, d1.data());

  std::vector<double> out(dim);
  if (order == 1) {
    // (phi/n)' = phi'/n - phi n'/n^2
    const double a = 1.0 / n0;
    const double b = n1 / (n0 * n0);
    for (std::size_t s = 0; s < dim; ++s) {
      out[s] = d1[s] * a - phi[s] * b;
    }
  } else {
    const double n2 = norm_derivative(enc.norm(), x, 2, domain);
    std::vector<double> d2(dim);
    sig->derivative_span(x, 2, 0, dim, d2.data());
    // (phi/n)'' = phi''/n - 2 phi' n'/n^2 + phi (2 n'^2/n^3 - n''/n^2)
    const double a = 1.0 / n0;
    const double b = 2.0 * n1 / (n0 * n0);
    const double c = 2.0 * n1 * n1 / (n0 * n0 * n0) - n2 / (n0 * n0);
    for (std::size_t s = 0; s < dim; ++s) {
      out[s] = d2[s] * a - d1[s] * b + phi[s] * c;
    }
  }
  return HyperVector(std::move(out));
}

}  // namespace

Stencil fd_stencil(int order, double h, double x, Domain1D domain) {
  const OffsetMap stencil = build_stencil(order, h, x, domain);
  Stencil out;
  const double scale = order == 0 ? 1.0 : std::pow(h, order);
  for (const auto& [off, coeff] : stencil) {
    out.offsets.push_back(static_cast<double>(off) * h);
    out.coefficients.push_back(coeff / scale);
  }
  return out;
}

HyperVector encoding_derivative(const NormalizedEncoder& enc, double x,
                                const DerivativeSpec& spec) {
  if (spec.method == DerivativeSpec::Method::exact_sigmoid) {
    if (spec.order == 0) return enc.encode_normalized(x);
    return exact_sigmoid_derivative(enc, x, spec.order);
  }

  if (!enc.domain().contains(x)) {
    throw OutOfDomainError("encoding_derivative: x outside the domain");
  }
  if (spec.order == 0) return enc.encode_normalized(x);
  const Stencil stencil = fd_stencil(spec.order, spec.step, x, enc.domain());

  const std::size_t dim = enc.dim();
  std::vector<double> sum(dim, 0.0), comp(dim, 0.0), tmp(dim);
  for (std::size_t p = 0; p < stencil.offsets.size(); ++p) {
    enc.encode_normalized_into(x + stencil.offsets[p], tmp);
    kahan_axpy(sum, comp, stencil.coefficients[p], tmp);
  }
  return HyperVector(std::move(sum));
}

double derivative_eval(const HyperVector& F, const NormalizedEncoder& enc,
                       double x, const DerivativeSpec& spec) {
  if (F.dim() != enc.dim()) {
    throw DimensionMismatchError("derivative_eval: vector does not match "
                                 "encoder dimension");
  }
  return inner_scaled(F, encoding_derivative(enc, x, spec));
}

double integral(const HyperVector& F, const HyperVector& one_X) {
  return inner_scaled(F, one_X);
}

}  // namespace hdt
