#include "hdt/kernels.hpp"

#include <cstdint>
#include <vector>

namespace hdt {

namespace {

// Kahan partial over one block of products; sequential ascending order.
inline double block_dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double term = a[i] * b[i] - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

inline double combine_blocks(const std::vector<double>& partials) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double p : partials) {
    const double term = p - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

}  // namespace

double dot_scaled(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partials(nblocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
    const std::size_t begin = static_cast<std::size_t>(blk) * kSumBlock;
    const std::size_t len = std::min(kSumBlock, n - begin);
    partials[static_cast<std::size_t>(blk)] =
        block_dot(a.data() + begin, b.data() + begin, len);
  }
  return combine_blocks(partials) / static_cast<double>(n);
}

void kahan_axpy(std::span<double> sum, std::span<double> comp, double coef,
                std::span<const double> term) {
  const std::int64_t n = static_cast<std::int64_t>(sum.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double t = coef * term[static_cast<std::size_t>(i)] -
                     comp[static_cast<std::size_t>(i)];
    const double next = sum[static_cast<std::size_t>(i)] + t;
    comp[static_cast<std::size_t>(i)] =
        (next - sum[static_cast<std::size_t>(i)]) - t;
    sum[static_cast<std::size_t>(i)] = next;
  }
}

double kahan_total(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double v : values) {
    const double term = v - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

namespace serial {

double dot_scaled(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partials(nblocks);
  for (std::size_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t begin = blk * kSumBlock;
    const std::size_t len = std::min(kSumBlock, n - begin);
    partials[blk] = block_dot(a.data() + begin, b.data() + begin, len);
  }
  return combine_blocks(partials) / static_cast<double>(n);
}

void kahan_axpy(std::span<double> sum, std::span<double> comp, double coef,
                std::span<const double> term) {
  const std::size_t n = sum.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = coef * term[i] - comp[i];
    const double next = sum[i] + t;
    comp[i] = (next - sum[i]) - t;
    sum[i] = next;
  }
}

}  // namespace serial

}  // namespace hdt
