// Throughput comparison of the OpenMP kernels against the serial reference
// implementations, with a bitwise-equality check on every pair.

#include <chrono>
#include <cstdio>
#include <memory>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hdt/encoder.hpp"
#include "hdt/kernels.hpp"
#include "hdt/normalization.hpp"
#include "hdt/solvers.hpp"
#include "hdt/transform.hpp"

using namespace hdt;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
double time_ms(int repeats, Fn&& fn) {
  fn();  // warm up
  const double start = now_ms();
  for (int r = 0; r < repeats; ++r) fn();
  return (now_ms() - start) / repeats;
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx   "
              "bitwise %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "equal" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  {
    const std::size_t n = 1000000;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = unif(rng);
      b[i] = unif(rng);
    }
    volatile double sink = 0.0;
    const double serial_ms =
        time_ms(20, [&] { sink = serial::dot_scaled(a, b); });
    const double parallel_ms = time_ms(20, [&] { sink = dot_scaled(a, b); });
    (void)sink;
    report("dot_scaled (D=1e6)", serial_ms, parallel_ms,
           serial::dot_scaled(a, b) == dot_scaled(a, b));
  }

  auto enc_ptr = std::make_shared<IntervalStepEncoder>(Domain1D{0.0, 1.0},
                                                       0.05, 200000, 7);
  {
    std::vector<double> out_s(enc_ptr->dim()), out_p(enc_ptr->dim());
    const double serial_ms =
        time_ms(10, [&] { enc_ptr->encode_into_serial(0.613, out_s); });
    const double parallel_ms =
        time_ms(10, [&] { enc_ptr->encode_into(0.613, out_p); });
    report("encode_into (D=2e5)", serial_ms, parallel_ms, out_s == out_p);
  }

  {
    auto small = std::make_shared<IntervalStepEncoder>(Domain1D{0.0, 1.0},
                                                       0.05, 50000, 7);
    const NormalizedEncoder enc = make_normalized(small, 100, 10);
    const Quadrature q = Quadrature::default_for(enc);
    const SampledFunction f = SampledFunction::from_function(
        [](double x) { return x * std::sin(10.0 * x); });
    const double serial_ms = time_ms(3, [&] { serial::forward(f, enc, q); });
    const double parallel_ms = time_ms(3, [&] { forward(f, enc, q); });
    const HyperVector a = serial::forward(f, enc, q);
    const HyperVector b = forward(f, enc, q);
    bool same = true;
    for (std::size_t s = 0; s < a.dim(); ++s) {
      if (a[s] != b[s]) {
        same = false;
        break;
      }
    }
    report("forward (D=5e4, 400 nodes)", serial_ms, parallel_ms, same);
  }

  {
    // Gram assembly inside ridge_solve dominates equation solving.
    auto small = std::make_shared<IntervalStepEncoder>(Domain1D{0.0, 1.0}, 0.1,
                                                       20000, 9);
    const NormalizedEncoder enc = make_normalized(small, 100, 10);
    RidgeProblem p;
    p.ridge = 1.0;
    for (const double x : linspace(0.0, 1.0, 150)) {
      p.rows.push_back(data_row(enc, x, x));
    }
    HyperVector result = HyperVector::zeros(1);
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double serial_ms = time_ms(3, [&] { result = ridge_solve(p); });
    const HyperVector rs = result;
    omp_set_num_threads(max_threads);
#else
    const double serial_ms = time_ms(3, [&] { result = ridge_solve(p); });
    const HyperVector rs = result;
#endif
    const double parallel_ms = time_ms(3, [&] { result = ridge_solve(p); });
    bool same = rs.dim() == result.dim();
    for (std::size_t s = 0; same && s < rs.dim(); ++s) {
      same = rs[s] == result[s];
    }
    report("ridge_solve (m=150, D=2e4)", serial_ms, parallel_ms, same);
  }

  return 0;
}
