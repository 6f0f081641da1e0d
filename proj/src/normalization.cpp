#include "hdt/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "hdt/errors.hpp"

namespace hdt {

namespace {

std::vector<double> trapezoid_weights(std::span<const double> grid) {
  const std::size_t m = grid.size();
  std::vector<double> w(m, 0.0);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double h = grid[j + 1] - grid[j];
    w[j] += h / 2.0;
    w[j + 1] += h / 2.0;
  }
  return w;
}

}  // namespace

NormalizationFn::NormalizationFn(std::vector<double> grid,
                                 std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 2 || grid_.size() != values_.size()) {
    throw ConfigError("NormalizationFn: grid and values must match, size >= 2");
  }
  for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
    if (!(grid_[j] < grid_[j + 1])) {
      throw ConfigError("NormalizationFn: grid must be strictly increasing");
    }
  }
  for (const double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw NumericalError("NormalizationFn: values must be positive finite");
    }
  }
}

NormalizationFn NormalizationFn::constant(double value, Domain1D domain) {
  return NormalizationFn({domain.a, domain.b}, {value, value});
}

double NormalizationFn::eval(double x) const {
  if (x <= grid_.front()) return values_.front();
  if (x >= grid_.back()) return values_.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

std::vector<double> uniform_grid(Domain1D domain, std::size_t m) {
  if (m < 2) throw ConfigError("uniform_grid: need at least 2 points");
  std::vector<double> grid(m);
  const double h = domain.length() / static_cast<double>(m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    grid[j] = domain.a + static_cast<double>(j) * h;
  }
  grid.back() = domain.b;
  return grid;
}

NormalizationFn initial_guess(const Encoder& enc,
                              std::span<const double> grid) {
  const std::vector<double> w = trapezoid_weights(grid);
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double acc = 0.0;
    for (std::size_t jp = 0; jp < grid.size(); ++jp) {
      acc += w[jp] * enc.expected_kernel(grid[j], grid[jp]);
    }
    if (!(acc > 0.0)) {
      throw NumericalError(
          "initial_guess: kernel integral non-positive at grid point " +
          std::to_string(j) + " (degenerate kernel)");
    }
    values[j] = std::sqrt(acc);
  }
  return NormalizationFn(std::vector<double>(grid.begin(), grid.end()),
                         std::move(values));
}

std::vector<double> tilde_one(const Encoder& enc, const NormalizationFn& norm,
                              std::span<const double> grid) {
  const std::vector<double> w = trapezoid_weights(grid);
  std::vector<double> n_at(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) n_at[j] = norm.eval(grid[j]);
  std::vector<double> tilde(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double acc = 0.0;
    for (std::size_t jp = 0; jp < grid.size(); ++jp) {
      acc += w[jp] * enc.expected_kernel(grid[j], grid[jp]) /
             (n_at[j] * n_at[jp]);
    }
    tilde[j] = acc;
  }
  return tilde;
}

namespace {

NormalizationFn run_iteration(const Encoder& enc, std::size_t grid_size,
                              int max_iterations, const double* tolerance,
                              NormalizationTrace* trace) {
  const std::vector<double> grid = uniform_grid(enc.domain(), grid_size);
  NormalizationFn n = initial_guess(enc, grid);
  std::vector<double> values(n.values().begin(), n.values().end());

  if (trace) {
    trace->grid = grid;
    trace->n_iterates.clear();
    trace->tilde_iterates.clear();
    trace->residuals.clear();
    trace->n_iterates.push_back(values);
  }

  double prev_residual = 0.0;
  int growing = 0;
  for (int it = 0; it < max_iterations; ++it) {
    const std::vector<double> tilde = tilde_one(enc, n, grid);
    double residual = 0.0;
    for (const double t : tilde) residual = std::max(residual, std::abs(t - 1.0));

    if (trace) {
      trace->tilde_iterates.push_back(tilde);
      trace->residuals.push_back(residual);
    }
    if (it > 0 && residual > prev_residual) {
      if (++growing >= 3) {
        throw NumericalError(
            "solve_normalization: residual grew 3 consecutive iterations "
            "(diverging), last residual " + std::to_string(residual));
      }
    } else {
      growing = 0;
    }
    prev_residual = residual;
    if (tolerance && residual < *tolerance) {
      return n;
    }

    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!(tilde[j] > 0.0)) {
        throw NumericalError("solve_normalization: non-positive 1~ at grid "
                             "point " + std::to_string(j));
      }
      values[j] *= std::sqrt(tilde[j]);
    }
    n = NormalizationFn(grid, values);
    if (trace) trace->n_iterates.push_back(values);
  }

  // Residual of the returned n.
  if (trace) {
    const std::vector<double> tilde = tilde_one(enc, n, grid);
    double residual = 0.0;
    for (const double t : tilde) residual = std::max(residual, std::abs(t - 1.0));
    trace->tilde_iterates.push_back(tilde);
    trace->residuals.push_back(residual);
  }
  return n;
}

}  // namespace

NormalizationFn solve_normalization(const Encoder& enc, std::size_t grid_size,
                                    int iterations, NormalizationTrace* trace) {
  return run_iteration(enc, grid_size, iterations, nullptr, trace);
}

NormalizationFn solve_normalization_tol(const Encoder& enc, double tolerance,
                                        std::size_t grid_size,
                                        int max_iterations,
                                        NormalizationTrace* trace) {
  return run_iteration(enc, grid_size, max_iterations, &tolerance, trace);
}

NormalizedEncoder::NormalizedEncoder(std::shared_ptr<const Encoder> base,
                                     NormalizationFn norm)
    : base_(std::move(base)), norm_(std::move(norm)) {}

void NormalizedEncoder::encode_normalized_into(double x,
                                               std::span<double> out) const {
  base_->encode_into(x, out);
  const double scale = 1.0 / norm_.eval(x);
  const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] *= scale;
  }
}

HyperVector NormalizedEncoder::encode_normalized(double x) const {
  std::vector<double> out(dim());
  encode_normalized_into(x, out);
  return HyperVector(std::move(out));
}

NormalizedEncoder make_normalized(std::shared_ptr<const Encoder> enc,
                                  std::size_t grid_size, int iterations) {
  NormalizationFn n = solve_normalization(*enc, grid_size, iterations);
  return NormalizedEncoder(std::move(enc), std::move(n));
}

}  // namespace hdt
