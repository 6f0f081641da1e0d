#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "hdt/encoder.hpp"
#include "hdt/errors.hpp"
#include "hdt/normalization.hpp"
#include "test_util.hpp"

using hdt::Domain1D;
using hdt::IntervalStepEncoder;
using hdt::NormalizationFn;
using hdt::NormalizationTrace;
using hdt::PeriodicEncoder;

namespace {

// Test doubles driving solver edge paths.
struct NegativeKernelEncoder : hdt::Encoder {
  NegativeKernelEncoder() : Encoder({0.0, 1.0}, 4, 1) {}
  double length_scale() const noexcept override { return 0.25; }
  double expected_kernel(double, double) const override { return -1.0; }
  void encode_span(double, std::size_t, std::size_t, double* out) const override {
    *out = 0.0;
  }
  hdt::ConfigMap to_config() const override { return {}; }
};

// Kernel whose overall scale accelerates between iteration sweeps, so the
// residual grows every iteration and the divergence guard must fire.
struct RunawayKernelEncoder : hdt::Encoder {
  mutable std::size_t calls = 0;
  std::size_t calls_per_sweep;
  explicit RunawayKernelEncoder(std::size_t grid)
      : Encoder({0.0, 1.0}, 4, 1), calls_per_sweep(grid * grid) {}
  double length_scale() const noexcept override { return 0.25; }
  double expected_kernel(double x, double xp) const override {
    const double stage =
        std::floor(static_cast<double>(calls++) /
                   static_cast<double>(calls_per_sweep));
    const double factor = std::exp(0.1 * std::pow(4.0, stage));
    const double tri = std::max(0.0, 1.0 - std::abs(x - xp) / 0.25);
    return factor * tri;
  }
  void encode_span(double, std::size_t, std::size_t, double* out) const override {
    *out = 0.0;
  }
  hdt::ConfigMap to_config() const override { return {}; }
};

}  // namespace

TEST_CASE("NormalizationFn validates and interpolates") {
  CHECK_THROWS_AS(NormalizationFn({0.0, 1.0}, {1.0, -1.0}),
                  hdt::NumericalError);
  CHECK_THROWS_AS(NormalizationFn({1.0, 0.0}, {1.0, 1.0}), hdt::ConfigError);

  const NormalizationFn n({0.0, 0.5, 1.0}, {1.0, 2.0, 4.0});
  CHECK(n.eval(0.0) == 1.0);
  CHECK(n.eval(0.25) == doctest::Approx(1.5));
  CHECK(n.eval(0.75) == doctest::Approx(3.0));
  CHECK(n.eval(-5.0) == 1.0);  // clamped
  CHECK(n.eval(5.0) == 4.0);

  const NormalizationFn c = NormalizationFn::constant(3.0, {0.0, 1.0});
  CHECK(c.eval(0.5) == 3.0);
}

TEST_CASE("initial guess: periodic kernel gives the constant sqrt(lambda)") {
  // 9 cells on [0,1] with a 100-point grid: lambda is a whole number of
  // grid steps, so the trapezoid rule integrates the piecewise-linear
  // kernel exactly.
  const PeriodicEncoder enc({0.0, 1.0}, 9, 4, 1);
  const auto grid = hdt::uniform_grid(enc.domain(), 100);
  const NormalizationFn n0 = hdt::initial_guess(enc, grid);
  const double expected = std::sqrt(enc.lambda());
  for (const double v : n0.values()) {
    CHECK(std::abs(v - expected) <= 1e-6);
  }
}

TEST_CASE("initial guess: triangular kernel interior and boundary values") {
  const IntervalStepEncoder enc({0.0, 1.0}, 0.25, 4, 1);
  const auto grid = hdt::uniform_grid(enc.domain(), 100);
  const NormalizationFn n0 = hdt::initial_guess(enc, grid);
  // Interior: the full triangle integrates to lambda.
  const double mid = n0.eval(0.5);
  CHECK(std::abs(mid * mid - 0.25) <= 5e-4);
  // At the left edge only half the triangle is inside.
  const double edge = n0.eval(0.0);
  CHECK(std::abs(edge * edge - 0.125) <= 5e-4);
}

TEST_CASE("initial guess rejects degenerate kernels") {
  const NegativeKernelEncoder enc;
  const auto grid = hdt::uniform_grid(enc.domain(), 50);
  CHECK_THROWS_AS(hdt::initial_guess(enc, grid), hdt::NumericalError);
}

TEST_CASE("tilde_one: exact solution gives the constant one") {
  const PeriodicEncoder enc({0.0, 1.0}, 9, 4, 1);
  const auto grid = hdt::uniform_grid(enc.domain(), 100);
  const NormalizationFn exact =
      NormalizationFn::constant(std::sqrt(enc.lambda()), enc.domain());
  const auto tilde = hdt::tilde_one(enc, exact, grid);
  for (const double t : tilde) {
    CHECK(std::abs(t - 1.0) <= 1e-6);
  }
}

TEST_CASE("tilde_one scales inversely with n squared") {
  const IntervalStepEncoder enc({0.0, 1.0}, 0.25, 4, 1);
  const auto grid = hdt::uniform_grid(enc.domain(), 60);
  const NormalizationFn n1 = hdt::initial_guess(enc, grid);
  std::vector<double> doubled(n1.values().begin(), n1.values().end());
  for (double& v : doubled) v *= 2.0;
  const NormalizationFn n2(
      std::vector<double>(grid.begin(), grid.end()), doubled);
  const auto t1 = hdt::tilde_one(enc, n1, grid);
  const auto t2 = hdt::tilde_one(enc, n2, grid);
  for (std::size_t j = 0; j < t1.size(); ++j) {
    CHECK(testutil::rel_diff(t2[j], t1[j] / 4.0) < 1e-13);
  }
}

TEST_CASE("successive approximation converges at lambda = 1/4") {
  const IntervalStepEncoder enc({0.0, 1.0}, 0.25, 4, 1);
  NormalizationTrace trace;
  hdt::solve_normalization(enc, 100, 10, &trace);
  REQUIRE(trace.residuals.size() == 11);  // initial guess + 10 updates
  CHECK(trace.residuals.back() <= 0.01);
  // Iterates stay positive.
  for (const auto& iterate : trace.n_iterates) {
    for (const double v : iterate) {
      CHECK(v > 0.0);
    }
  }
}

TEST_CASE("successive approximation converges at lambda = 1/20") {
  const IntervalStepEncoder enc({0.0, 1.0}, 0.05, 4, 1);
  NormalizationTrace trace;
  hdt::solve_normalization(enc, 100, 10, &trace);
  CHECK(trace.residuals.back() <= 0.01);
}

TEST_CASE("periodic kernel is a fixed point from the first iterate") {
  const PeriodicEncoder enc({0.0, 1.0}, 9, 4, 1);
  NormalizationTrace trace;
  const NormalizationFn n = hdt::solve_normalization(enc, 100, 1, &trace);
  CHECK(trace.residuals.front() <= 1e-6);
  const double expected = std::sqrt(enc.lambda());
  for (const double v : n.values()) {
    CHECK(std::abs(v - expected) <= 1e-6);
  }
}

TEST_CASE("one more iteration moves n by at most ~residual/2") {
  const IntervalStepEncoder enc({0.0, 1.0}, 0.25, 4, 1);
  NormalizationTrace trace;
  hdt::solve_normalization(enc, 100, 10, &trace);
  // Relative change of the update that produced iterate i+1 is bounded by
  // half the residual it saw, to first order.
  for (std::size_t i = trace.n_iterates.size() - 3;
       i + 1 < trace.n_iterates.size(); ++i) {
    const auto& cur = trace.n_iterates[i];
    const auto& next = trace.n_iterates[i + 1];
    const double residual = trace.residuals[i];
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const double change = std::abs(next[j] / cur[j] - 1.0);
      CHECK(change <= 0.5 * residual + residual * residual);
    }
  }
}

TEST_CASE("solved n is flat away from the boundaries") {
  const IntervalStepEncoder enc({0.0, 1.0}, 0.05, 4, 1);
  const NormalizationFn n = hdt::solve_normalization(enc, 100, 10);
  const double center = n.eval(0.5);
  for (double x = 0.06; x <= 0.94; x += 0.01) {
    CHECK(std::abs(n.eval(x) / center - 1.0) <= 0.01);
  }
}

TEST_CASE("divergence guard fires on a runaway kernel") {
  const RunawayKernelEncoder enc(40);
  CHECK_THROWS_AS(hdt::solve_normalization(enc, 40, 10), hdt::NumericalError);
}

TEST_CASE("tolerance mode stops early") {
  const PeriodicEncoder enc({0.0, 1.0}, 9, 4, 1);
  NormalizationTrace trace;
  hdt::solve_normalization_tol(enc, 1e-4, 100, 50, &trace);
  CHECK(trace.residuals.size() <= 2);
  CHECK(trace.residuals.back() < 1e-4);
}

TEST_CASE("normalized encoder divides componentwise") {
  auto enc = std::make_shared<IntervalStepEncoder>(Domain1D{0.0, 1.0}, 0.25,
                                                   512, 17);
  const hdt::NormalizedEncoder norm = hdt::make_normalized(enc, 100, 10);
  const double x = 0.42;
  const hdt::HyperVector raw = enc->encode(x);
  const hdt::HyperVector scaled = norm.encode_normalized(x);
  const double nx = norm.norm_at(x);
  for (std::size_t s = 0; s < 512; ++s) {
    CHECK(scaled[s] == doctest::Approx(raw[s] / nx).epsilon(1e-15));
  }
}
