#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "hdt/errors.hpp"

namespace hdt {

/// A scalar function given either as a black-box evaluator or as a table of
/// (x, f(x)) pairs with linear interpolation. Table lookups never
/// extrapolate.
class SampledFunction {
 public:
  static SampledFunction from_function(std::function<double(double)> f) {
    SampledFunction sf;
    sf.eval_ = std::move(f);
    return sf;
  }

  static SampledFunction from_table(std::vector<double> x,
                                    std::vector<double> y) {
    if (x.size() < 2 || x.size() != y.size()) {
      throw ConfigError("SampledFunction: table needs >= 2 matching samples");
    }
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
      if (!(x[j] < x[j + 1])) {
        throw ConfigError("SampledFunction: table abscissae must increase");
      }
    }
    auto xs = std::make_shared<std::vector<double>>(std::move(x));
    auto ys = std::make_shared<std::vector<double>>(std::move(y));
    SampledFunction sf;
    sf.eval_ = [xs, ys](double v) {
      if (v < xs->front() || v > xs->back()) {
        throw OutOfDomainError("SampledFunction: sample point outside table "
                               "range (no extrapolation)");
      }
      const auto it = std::upper_bound(xs->begin(), xs->end(), v);
      if (it == xs->end()) return ys->back();
      const std::size_t hi = static_cast<std::size_t>(it - xs->begin());
      const std::size_t lo = hi == 0 ? 0 : hi - 1;
      if (hi == lo) return (*ys)[lo];
      const double t = (v - (*xs)[lo]) / ((*xs)[hi] - (*xs)[lo]);
      return (*ys)[lo] + t * ((*ys)[hi] - (*ys)[lo]);
    };
    return sf;
  }

  double operator()(double x) const { return eval_(x); }

 private:
  SampledFunction() = default;
  std::function<double(double)> eval_;
};

}  // namespace hdt
