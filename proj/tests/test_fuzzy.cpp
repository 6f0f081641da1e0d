#include <doctest.h>

#include <cmath>

#include "hdt/errors.hpp"
#include "hdt/fuzzy.hpp"
#include "test_util.hpp"

using hdt::FuzzyPartition;
using hdt::SampledFunction;

TEST_CASE("triangular partition shape") {
  const FuzzyPartition p{{0.0, 5.0}, 6};
  CHECK(p.spacing() == 1.0);
  CHECK(p.basis(1, 1.0) == 1.0);
  CHECK(p.basis(1, 2.0) == 0.0);
  CHECK(p.basis(1, 1.5) == doctest::Approx(0.5));
  CHECK(p.basis(0, 0.0) == 1.0);
  CHECK(p.basis(5, 5.0) == 1.0);
  // Partition of unity inside the domain.
  for (double x = 0.0; x <= 5.0; x += 0.37) {
    double total = 0.0;
    for (std::size_t s = 0; s < 6; ++s) total += p.basis(s, x);
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("constants transform to themselves") {
  const FuzzyPartition p{{0.0, 1.0}, 11};
  const auto c = SampledFunction::from_function([](double) { return 3.25; });
  const auto G = hdt::fuzzy_transform(c, p);
  REQUIRE(G.size() == 11);
  for (const double g : G) {
    CHECK(std::abs(g - 3.25) <= 1e-9);
  }
}

TEST_CASE("inverse interpolates the components exactly at the nodes") {
  const FuzzyPartition p{{0.0, 1.0}, 9};
  const auto f = SampledFunction::from_function(
      [](double x) { return x * std::sin(10.0 * x); });
  const auto G = hdt::fuzzy_transform(f, p);
  for (std::size_t s = 0; s < G.size(); ++s) {
    CHECK(hdt::fuzzy_inverse(G, p, p.node(s)) == G[s]);
  }
}

TEST_CASE("linear functions hit the nodes exactly at interior nodes") {
  const FuzzyPartition p{{0.0, 1.0}, 11};
  const auto lin =
      SampledFunction::from_function([](double x) { return 3.0 * x - 1.0; });
  const auto G = hdt::fuzzy_transform(lin, p);
  for (std::size_t s = 1; s + 1 < G.size(); ++s) {
    CHECK(G[s] == doctest::Approx(3.0 * p.node(s) - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("fuzzy recovery of the oscillating preset") {
  const FuzzyPartition p{{0.0, 1.0}, 21};
  const auto fn = [](double x) { return x * std::sin(10.0 * x); };
  const auto G = hdt::fuzzy_transform(SampledFunction::from_function(fn), p);
  double acc = 0.0;
  int count = 0;
  for (double x = 0.05; x <= 0.95; x += 0.01) {
    const double d = hdt::fuzzy_inverse(G, p, x) - fn(x);
    acc += d * d;
    ++count;
  }
  CHECK(std::sqrt(acc / count) <= 0.05);
}

TEST_CASE("degenerate partitions are rejected") {
  const FuzzyPartition p{{0.0, 1.0}, 1};
  const auto c = SampledFunction::from_function([](double) { return 1.0; });
  CHECK_THROWS_AS(hdt::fuzzy_transform(c, p), hdt::ConfigError);
  const FuzzyPartition ok{{0.0, 1.0}, 3};
  const auto G = hdt::fuzzy_transform(c, ok);
  CHECK_THROWS_AS(
      hdt::fuzzy_inverse(std::vector<double>{1.0, 2.0}, ok, 0.5),
      hdt::DimensionMismatchError);
}
