#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "hdt/encoder.hpp"
#include "hdt/errors.hpp"
#include "hdt/multivariate.hpp"
#include "hdt/transform.hpp"
#include "test_util.hpp"

using hdt::Axis;
using hdt::DerivativeSpec;
using hdt::Domain1D;
using hdt::HyperVector;
using hdt::IntervalStepEncoder;
using hdt::NormalizedEncoder;
using hdt::ProductEncoder;
using hdt::Quadrature;
using hdt::SampledFunction;

namespace {

NormalizedEncoder make_axis(double lambda, std::size_t dim,
                            std::uint64_t seed) {
  auto enc = std::make_shared<IntervalStepEncoder>(Domain1D{0.0, 1.0}, lambda,
                                                   dim, seed);
  return hdt::make_normalized(enc, 100, 10);
}

ProductEncoder make_pair(double lambda, std::size_t dim, std::uint64_t sx,
                         std::uint64_t sy) {
  return ProductEncoder(make_axis(lambda, dim, sx), make_axis(lambda, dim, sy));
}

HyperVector one_of(const NormalizedEncoder& enc) {
  return hdt::forward(
      SampledFunction::from_function([](double) { return 1.0; }), enc,
      Quadrature::default_for(enc));
}

}  // namespace

TEST_CASE("product encoder refuses correlated axes") {
  const NormalizedEncoder a = make_axis(0.2, 256, 5);
  const NormalizedEncoder b = make_axis(0.2, 256, 5);
  CHECK_THROWS_AS(ProductEncoder(a, b), hdt::ConfigError);
  const NormalizedEncoder c = make_axis(0.2, 128, 6);
  CHECK_THROWS_AS(ProductEncoder(a, c), hdt::DimensionMismatchError);
}

TEST_CASE("pair encoding self products are exact for bipolar axes") {
  const ProductEncoder pe = make_pair(0.25, 4096, 5, 6);
  const double x = 0.3, y = 0.7;
  const HyperVector p = pe.encode_pair(x, y);
  const double nx = pe.axis(Axis::X).norm_at(x);
  const double ny = pe.axis(Axis::Y).norm_at(y);
  CHECK(testutil::rel_diff(hdt::inner_scaled(p, p),
                           1.0 / (nx * nx * ny * ny)) < 1e-12);
}

TEST_CASE("product kernel factorizes for the raw processes") {
  const std::size_t dim = 10000;
  const IntervalStepEncoder ex({0.0, 1.0}, 0.2, dim, 7);
  const IntervalStepEncoder ey({0.0, 1.0}, 0.2, dim, 8);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double tol = 4.0 / std::sqrt(static_cast<double>(dim));
  int bad = 0;
  const int quads = 500;
  for (int t = 0; t < quads; ++t) {
    const double x = unif(rng), xp = unif(rng);
    const double y = unif(rng), yp = unif(rng);
    const double got =
        hdt::inner_scaled(hdt::bind(ex.encode(x), ey.encode(y)),
                          hdt::bind(ex.encode(xp), ey.encode(yp)));
    const double want =
        ex.expected_kernel(x, xp) * ey.expected_kernel(y, yp);
    if (std::abs(got - want) > tol) ++bad;
  }
  CHECK(bad <= 5);  // 99% budget

  // Same y, distant x: uncorrelated.
  const double far = hdt::inner_scaled(
      hdt::bind(ex.encode(0.1), ey.encode(0.5)),
      hdt::bind(ex.encode(0.8), ey.encode(0.5)));
  CHECK(std::abs(far) <= tol);
}

TEST_CASE("bivariate transform of zero is zero") {
  const ProductEncoder pe = make_pair(0.25, 512, 9, 10);
  const Quadrature q = Quadrature::default_for(pe.axis(Axis::X));
  const HyperVector F =
      hdt::forward2([](double, double) { return 0.0; }, pe, q, q);
  for (std::size_t s = 0; s < F.dim(); ++s) {
    CHECK(F[s] == 0.0);
  }
}

TEST_CASE("bivariate transform rejects non-finite values with coordinates") {
  const ProductEncoder pe = make_pair(0.25, 64, 9, 10);
  const Quadrature q = Quadrature::default_for(pe.axis(Axis::X));
  CHECK_THROWS_WITH_AS(
      hdt::forward2(
          [](double x, double y) {
            return (x > 0.5 && y > 0.5)
                       ? std::numeric_limits<double>::quiet_NaN()
                       : 0.0;
          },
          pe, q, q),
      doctest::Contains("node"), hdt::NumericalError);
}

TEST_CASE("iterated integration order does not matter") {
  const std::size_t dim = 4096;
  const NormalizedEncoder ax = make_axis(0.25, dim, 11);
  const NormalizedEncoder ay = make_axis(0.25, dim, 12);
  const Quadrature qx = Quadrature::default_for(ax);
  const Quadrature qy = Quadrature::default_for(ay);
  const auto f = [](double x, double y) {
    return std::sin(3.0 * x) * (y + 0.5) + x;
  };
  const ProductEncoder pe(ax, ay);
  const ProductEncoder ep(ay, ax);
  const HyperVector a = hdt::forward2(f, pe, qx, qy);
  const HyperVector b = hdt::forward2(
      [&f](double y, double x) { return f(x, y); }, ep, qy, qx);
  for (std::size_t s = 0; s < dim; ++s) {
    CHECK(std::abs(a[s] - b[s]) <= 1e-12 * std::max(1.0, std::abs(a[s])));
  }
}

TEST_CASE("separable functions evaluate as products of smoothings") {
  const std::size_t dim = 50000;
  const ProductEncoder pe = make_pair(0.2, dim, 13, 14);
  const Quadrature qx = Quadrature::default_for(pe.axis(Axis::X));
  const Quadrature qy = Quadrature::default_for(pe.axis(Axis::Y));
  const auto g = [](double x) { return std::sin(5.0 * x); };
  const auto h = [](double y) { return 1.0 + 0.5 * y; };
  const HyperVector F = hdt::forward2(
      [&](double x, double y) { return g(x) * h(y); }, pe, qx, qy);
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{
           {0.3, 0.4}, {0.5, 0.7}, {0.7, 0.3}}) {
    const double got = hdt::inner_scaled(F, pe.encode_pair(x, y));
    const double want =
        hdt::smooth_oracle(SampledFunction::from_function(g),
                           pe.axis(Axis::X), x, qx) *
        hdt::smooth_oracle(SampledFunction::from_function(h),
                           pe.axis(Axis::Y), y, qy);
    CHECK(std::abs(got - want) <= 0.05);
  }
}

TEST_CASE("marginalization: the three placements agree to rounding") {
  const std::size_t dim = 4096;
  const ProductEncoder pe = make_pair(0.25, dim, 15, 16);
  const HyperVector one_Y = one_of(pe.axis(Axis::Y));
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const HyperVector F =
        testutil::random_vector(dim, 1000 + static_cast<std::uint64_t>(trial));
    for (int p = 0; p < 20; ++p) {
      const double x = unif(rng);
      const HyperVector dx = pe.axis(Axis::X).encode_normalized(x);
      const double e1 = hdt::inner_scaled(F, hdt::bind(dx, one_Y));
      const double e2 = hdt::inner_scaled(hdt::bind(F, dx), one_Y);
      const double e3 = hdt::inner_scaled(hdt::bind(F, one_Y), dx);
      const double scale =
          std::max({std::abs(e1), std::abs(e2), std::abs(e3), 1e-6});
      CHECK(std::abs(e1 - e2) <= 1e-12 * scale);
      CHECK(std::abs(e1 - e3) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("marginal of g(x)*1 is |Y| times the smoothing of g") {
  const std::size_t dim = 50000;
  const ProductEncoder pe = make_pair(0.2, dim, 17, 18);
  const Quadrature qx = Quadrature::default_for(pe.axis(Axis::X));
  const Quadrature qy = Quadrature::default_for(pe.axis(Axis::Y));
  const auto g = [](double x) { return std::sin(5.0 * x); };
  const HyperVector F =
      hdt::forward2([&](double x, double) { return g(x); }, pe, qx, qy);
  const HyperVector one_Y = one_of(pe.axis(Axis::Y));
  for (const double x : {0.3, 0.5, 0.8}) {
    const double got = hdt::marginal_eval(F, pe, x, one_Y);
    const double want = hdt::smooth_oracle(SampledFunction::from_function(g),
                                           pe.axis(Axis::X), x, qx);
    CHECK(std::abs(got - want) <= 0.05);  // |Y| = 1
  }
  // Zero vector marginalizes to zero.
  CHECK(hdt::marginal_eval(HyperVector::zeros(dim), pe, 0.5, one_Y) == 0.0);
}

TEST_CASE("conditioning identities") {
  const std::size_t dim = 4096;
  const ProductEncoder pe = make_pair(0.25, dim, 19, 20);
  const Quadrature q = Quadrature::default_for(pe.axis(Axis::X));
  const HyperVector F = hdt::forward2(
      [](double x, double y) { return x + y * y; }, pe, q, q);
  const HyperVector one_Y = one_of(pe.axis(Axis::Y));
  const double x = 0.4, y = 0.6;

  const HyperVector cond = hdt::condition(F, pe, Axis::X, x);
  const double via_cond =
      hdt::inner_scaled(cond, pe.axis(Axis::Y).encode_normalized(y));
  const double direct = hdt::inner_scaled(F, pe.encode_pair(x, y));
  CHECK(testutil::rel_diff(via_cond, direct) < 1e-12);

  const double marg_via_cond = hdt::inner_scaled(cond, one_Y);
  const double marg = hdt::marginal_eval(F, pe, x, one_Y);
  CHECK(testutil::rel_diff(marg_via_cond, marg) < 1e-12);
}

TEST_CASE("conditioning a separable product recovers the other factor") {
  const std::size_t dim = 50000;
  const ProductEncoder pe = make_pair(0.2, dim, 21, 22);
  const Quadrature q = Quadrature::default_for(pe.axis(Axis::X));
  const auto g = [](double x) { return std::sin(5.0 * x); };
  const auto h = [](double y) { return 1.0 + 0.5 * y; };
  const HyperVector F = hdt::forward2(
      [&](double x, double y) { return g(x) * h(y); }, pe, q, q);
  const double x0 = 0.55;
  const HyperVector cond = hdt::condition(F, pe, Axis::X, x0);
  const double gx = hdt::smooth_oracle(SampledFunction::from_function(g),
                                       pe.axis(Axis::X), x0, q);
  for (const double y : {0.3, 0.6, 0.9}) {
    const double got =
        hdt::inner_scaled(cond, pe.axis(Axis::Y).encode_normalized(y));
    const double want = gx * hdt::smooth_oracle(
                                 SampledFunction::from_function(h),
                                 pe.axis(Axis::Y), y, q);
    CHECK(std::abs(got - want) <= 0.05);
  }
}

TEST_CASE("partial derivatives of x + y") {
  const std::size_t dim = 50000;
  const ProductEncoder pe = make_pair(0.25, dim, 23, 24);
  const Quadrature q = Quadrature::default_for(pe.axis(Axis::X));
  const HyperVector F =
      hdt::forward2([](double x, double y) { return x + y; }, pe, q, q);
  const DerivativeSpec spec = DerivativeSpec::fd(1, 0.05);
  CHECK(std::abs(hdt::partial_derivative_eval(F, pe, 0.5, 0.4, Axis::X, spec) -
                 1.0) <= 0.15);
  CHECK(std::abs(hdt::partial_derivative_eval(F, pe, 0.5, 0.4, Axis::Y, spec) -
                 1.0) <= 0.15);
  CHECK(hdt::partial_derivative_eval(HyperVector::zeros(dim), pe, 0.5, 0.4,
                                     Axis::X, spec) == 0.0);
}

TEST_CASE("partial derivative equals the stencil on the pair evaluation") {
  const std::size_t dim = 4096;
  const ProductEncoder pe = make_pair(0.25, dim, 25, 26);
  const Quadrature q = Quadrature::default_for(pe.axis(Axis::X));
  const HyperVector F = hdt::forward2(
      [](double x, double y) { return std::cos(2 * x) * y; }, pe, q, q);
  const double x = 0.45, y = 0.65, h = 0.03;
  const double direct = hdt::partial_derivative_eval(F, pe, x, y, Axis::X,
                                                     DerivativeSpec::fd(1, h));
  const double via_eval =
      (hdt::inner_scaled(F, pe.encode_pair(x + h, y)) -
       hdt::inner_scaled(F, pe.encode_pair(x - h, y))) /
      (2.0 * h);
  CHECK(testutil::rel_diff(direct, via_eval) < 1e-12);
}

TEST_CASE("marginal curves serialize with the pinned schema") {
  const ProductEncoder pe = make_pair(0.25, 1024, 31, 32);
  const HyperVector F = hdt::forward2(
      [](double x, double y) { return x * y; }, pe,
      Quadrature::default_for(pe.axis(Axis::X)),
      Quadrature::default_for(pe.axis(Axis::Y)));
  const HyperVector one_Y = one_of(pe.axis(Axis::Y));
  const auto xs = hdt::linspace(0.0, 1.0, 11);
  const hdt::CsvTable table = hdt::marginal_curve(F, pe, one_Y, xs);
  REQUIRE(table.columns == std::vector<std::string>{"x", "marginal"});
  REQUIRE(table.rows.size() == 11);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(table.rows[i][0] == xs[i]);
    CHECK(table.rows[i][1] ==
          hdt::marginal_eval(F, pe, xs[i], one_Y));
  }
}

TEST_CASE("zero centering statistic for the raw process") {
  const std::size_t dim = 1000;
  const IntervalStepEncoder enc({0.0, 1.0}, 0.1, dim, 99);
  const double stat = hdt::zero_centering_stat(enc, 1000, 1234);
  CHECK(stat <= 4.0 / std::sqrt(static_cast<double>(dim)));
}
