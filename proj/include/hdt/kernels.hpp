#pragma once

#include <cstddef>
#include <span>

// Low-level summation kernels shared by the vector algebra, the transforms,
// and the Gram assembly in the solvers.
//
// All reductions use compensated (Kahan) summation over a fixed block
// decomposition: elements are summed sequentially inside blocks of
// kSumBlock, and the block partials are combined sequentially in block
// order. The shape of the reduction tree therefore does not depend on the
// number of threads, so the OpenMP variants return bit-identical results
// for any thread count, and identical results to the serial reference
// implementations in hdt::serial.

namespace hdt {

inline constexpr std::size_t kSumBlock = 4096;

/// (1/D) * sum_i a_i b_i with the fixed-shape compensated reduction.
double dot_scaled(std::span<const double> a, std::span<const double> b);

/// Compensated accumulation sum_i += coef * term_i, carrying one
/// compensation word per element in `comp`.
void kahan_axpy(std::span<double> sum, std::span<double> comp, double coef,
                std::span<const double> term);

/// Compensated sum of a plain range (sequential, fixed order).
double kahan_total(std::span<const double> values);

namespace serial {
double dot_scaled(std::span<const double> a, std::span<const double> b);
void kahan_axpy(std::span<double> sum, std::span<double> comp, double coef,
                std::span<const double> term);
}  // namespace serial

}  // namespace hdt
