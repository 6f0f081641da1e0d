#include <doctest.h>

#include <vector>

#include "hdt/errors.hpp"
#include "hdt/hypervector.hpp"
#include "test_util.hpp"

using hdt::HyperVector;

TEST_CASE("inner_scaled identity and zero cases") {
  const HyperVector ones(std::vector<double>{1, 1, 1, 1});
  const HyperVector zeros = HyperVector::zeros(4);
  CHECK(hdt::inner_scaled(ones, ones) == 1.0);
  CHECK(hdt::inner_scaled(ones, zeros) == 0.0);

  const HyperVector alt(std::vector<double>{1, -1, 1, -1});
  CHECK(hdt::inner_scaled(alt, ones) == 0.0);  // (1 - 1 + 1 - 1)/4
}

TEST_CASE("inner_scaled rejects mismatched dimensions") {
  const HyperVector u = HyperVector::zeros(4);
  const HyperVector v = HyperVector::zeros(5);
  CHECK_THROWS_AS(hdt::inner_scaled(u, v), hdt::DimensionMismatchError);
  CHECK_THROWS_AS(hdt::bind(u, v), hdt::DimensionMismatchError);
  CHECK_THROWS_AS(hdt::axpy(1.0, u, 1.0, v), hdt::DimensionMismatchError);
}

TEST_CASE("HyperVector construction validates contents") {
  CHECK_THROWS_AS(HyperVector(std::vector<double>{}),
                  hdt::DimensionMismatchError);
  CHECK_THROWS_AS(HyperVector(std::vector<double>{1.0, std::nan("")}),
                  hdt::NumericalError);
  CHECK_THROWS_AS(HyperVector(std::vector<double>{1.0, 1e308 * 10}),
                  hdt::NumericalError);
}

TEST_CASE("bind identity, annihilator, and componentwise product") {
  const HyperVector u(std::vector<double>{2, 3});
  const HyperVector v(std::vector<double>{4, 5});
  const HyperVector ones(std::vector<double>{1, 1});
  const HyperVector zeros = HyperVector::zeros(2);

  const HyperVector uv = hdt::bind(u, v);
  CHECK(uv[0] == 8.0);
  CHECK(uv[1] == 15.0);

  const HyperVector uid = hdt::bind(u, ones);
  CHECK(uid[0] == u[0]);
  CHECK(uid[1] == u[1]);

  const HyperVector z = hdt::bind(zeros, v);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
}

TEST_CASE("axpy basics") {
  const HyperVector u(std::vector<double>{1, 1});
  const HyperVector v(std::vector<double>{1, 0});

  const HyperVector just_u = hdt::axpy(1, u, 0, v);
  CHECK(just_u[0] == 1.0);
  CHECK(just_u[1] == 1.0);

  const HyperVector just_v = hdt::axpy(0, u, 1, v);
  CHECK(just_v[0] == 1.0);
  CHECK(just_v[1] == 0.0);

  const HyperVector combo = hdt::axpy(2, u, 3, v);
  CHECK(combo[0] == 5.0);
  CHECK(combo[1] == 2.0);
}

TEST_CASE("inner_scaled is exactly symmetric") {
  const HyperVector u = testutil::random_vector(10001, 11);
  const HyperVector v = testutil::random_vector(10001, 12);
  CHECK(hdt::inner_scaled(u, v) == hdt::inner_scaled(v, u));
}

TEST_CASE("inner_scaled agrees with a naive reference") {
  const HyperVector u = testutil::random_vector(50000, 21);
  const HyperVector v = testutil::random_vector(50000, 22);
  const double got = hdt::inner_scaled(u, v);
  const double want = testutil::naive_dot_scaled(u.values(), v.values());
  CHECK(testutil::rel_diff(got, want) < 1e-13);
}

TEST_CASE("inner_scaled is bilinear to 1e-12 relative") {
  const std::size_t dim = 8192;
  const HyperVector u = testutil::random_vector(dim, 31);
  const HyperVector w = testutil::random_vector(dim, 32);
  const HyperVector v = testutil::random_vector(dim, 33);
  const double a = 0.7, b = -1.3;
  const double lhs = hdt::inner_scaled(hdt::axpy(a, u, b, w), v);
  const double rhs =
      a * hdt::inner_scaled(u, v) + b * hdt::inner_scaled(w, v);
  CHECK(testutil::rel_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("bind distributes over axpy up to rounding") {
  const std::size_t dim = 4096;
  const HyperVector u = testutil::random_vector(dim, 41);
  const HyperVector w = testutil::random_vector(dim, 42);
  const HyperVector v = testutil::random_vector(dim, 43);
  const double a = 1.25, b = -0.5;
  const HyperVector lhs = hdt::bind(hdt::axpy(a, u, b, w), v);
  const HyperVector rhs = hdt::axpy(a, hdt::bind(u, v), b, hdt::bind(w, v));
  for (std::size_t i = 0; i < dim; ++i) {
    // Error scale must account for cancellation in a*u + b*w.
    const double scale =
        (std::abs(a * u[i]) + std::abs(b * w[i])) * std::abs(v[i]) + 1e-30;
    CHECK(std::abs(lhs[i] - rhs[i]) <= 4e-16 * scale);
  }
}

TEST_CASE("binding moves across the inner product") {
  const std::size_t dim = 4096;

  // Bipolar vectors: all products are exact, so the two placements are
  // bitwise equal.
  std::vector<double> ub(dim), xb(dim), vb(dim);
  std::mt19937_64 rng(55);
  for (std::size_t i = 0; i < dim; ++i) {
    ub[i] = (rng() >> 63) ? 1.0 : -1.0;
    xb[i] = (rng() >> 63) ? 1.0 : -1.0;
    vb[i] = (rng() >> 63) ? 1.0 : -1.0;
  }
  const HyperVector u(ub), x(xb), v(vb);
  CHECK(hdt::inner_scaled(hdt::bind(u, x), v) ==
        hdt::inner_scaled(u, hdt::bind(x, v)));

  // General values: only product association differs.
  const HyperVector ug = testutil::random_vector(dim, 61);
  const HyperVector xg = testutil::random_vector(dim, 62);
  const HyperVector vg = testutil::random_vector(dim, 63);
  CHECK(testutil::rel_diff(hdt::inner_scaled(hdt::bind(ug, xg), vg),
                           hdt::inner_scaled(ug, hdt::bind(xg, vg))) < 1e-12);
}
