#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "hdt/prf.hpp"

TEST_CASE("prf is deterministic") {
  CHECK(hdt::prf(1, 2, 3) == hdt::prf(1, 2, 3));
  CHECK(hdt::prf(0, 0, 0) == hdt::prf(0, 0, 0));
}

TEST_CASE("prf separates each argument") {
  CHECK(hdt::prf(1, 2, 3) != hdt::prf(1, 2, 4));
  CHECK(hdt::prf(1, 2, 3) != hdt::prf(1, 3, 3));
  CHECK(hdt::prf(1, 2, 3) != hdt::prf(2, 2, 3));
}

TEST_CASE("prf has no collisions over a million indices") {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1u << 21);
  const std::uint64_t seed = 0xfeedface, stream = 7;
  std::size_t collisions = 0;
  std::uint64_t prev = hdt::prf(seed, stream, 0);
  seen.insert(prev);
  for (std::uint64_t i = 1; i < 1000000; ++i) {
    const std::uint64_t h = hdt::prf(seed, stream, i);
    if (h == prev) ++collisions;  // adjacent indices must differ
    if (!seen.insert(h).second) ++collisions;
    prev = h;
  }
  CHECK(collisions == 0);
}

TEST_CASE("sign bit is unbiased") {
  const std::size_t n = 1000000;
  long long sum = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    sum += hdt::rademacher(hdt::prf(42, 0, i)) > 0 ? 1 : -1;
  }
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("unit_open maps into the open unit interval with mean 1/2") {
  const std::size_t n = 200000;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = hdt::unit_open(hdt::prf(7, 11, i));
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  const double mean = sum / static_cast<double>(n);
  // std of the mean is (1/sqrt(12))/sqrt(n); allow 5 sigma.
  CHECK(std::abs(mean - 0.5) <= 5.0 / (std::sqrt(12.0) * std::sqrt(n)));
}

TEST_CASE("value_bits folds negative zero") {
  CHECK(hdt::value_bits(-0.0) == hdt::value_bits(0.0));
  CHECK(hdt::value_bits(1.5) != hdt::value_bits(-1.5));
}
