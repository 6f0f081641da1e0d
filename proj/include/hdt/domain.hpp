#pragma once

namespace hdt {

/// Closed interval [a, b] with Lebesgue measure.
struct Domain1D {
  double a;
  double b;

  double length() const noexcept { return b - a; }
  bool contains(double x) const noexcept { return x >= a && x <= b; }
};

}  // namespace hdt
