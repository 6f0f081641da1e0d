#pragma once

#include <bit>
#include <cstdint>

// Counter-based pseudo-random function. Stateless: the value for a
// (seed, stream, index) triple is a pure function of its inputs, so any
// component of an encoding can be regenerated at random positions of a
// continuum without tables or generator state.

namespace hdt {

namespace detail {
// splitmix64 finalizer; bijective on 64-bit words with full avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Uniform 64-bit value for the triple (seed, stream, index).
/// For fixed seed and stream the map index -> prf(...) is injective.
inline constexpr std::uint64_t prf(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t index) noexcept {
  std::uint64_t h = detail::mix64(seed + 0x9e3779b97f4a7c15ull);
  h = detail::mix64(h ^ (stream * 0xbf58476d1ce4e5b9ull + 0x9e3779b97f4a7c15ull));
  h = detail::mix64(h ^ (index * 0x94d049bb133111ebull + 0x9e3779b97f4a7c15ull));
  return h;
}

/// Map a prf word to the open unit interval (0, 1); never returns 0 or 1.
inline constexpr double unit_open(std::uint64_t h) noexcept {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

/// Map a prf word to {-1.0, +1.0} with equal probability (top bit).
inline constexpr double rademacher(std::uint64_t h) noexcept {
  return (h >> 63) ? 1.0 : -1.0;
}

/// Canonical bit pattern of x for hashing (-0.0 folds onto +0.0).
inline std::uint64_t value_bits(double x) noexcept {
  return std::bit_cast<std::uint64_t>(x + 0.0);
}

}  // namespace hdt
