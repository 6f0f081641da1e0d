#include "hdt/multivariate.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "hdt/errors.hpp"
#include "hdt/kernels.hpp"
#include "hdt/prf.hpp"

namespace hdt {

ProductEncoder::ProductEncoder(NormalizedEncoder enc_x, NormalizedEncoder enc_y)
    : enc_x_(std::move(enc_x)), enc_y_(std::move(enc_y)) {
  if (enc_x_.dim() != enc_y_.dim()) {
    throw DimensionMismatchError("ProductEncoder: axis dimensions differ");
  }
  if (enc_x_.base().seed() == enc_y_.base().seed()) {
    throw ConfigError("ProductEncoder: axes share a seed; the samples would "
                      "be correlated instead of independent");
  }
}

HyperVector ProductEncoder::encode_pair(double x, double y) const {
  return bind(enc_x_.encode_normalized(x), enc_y_.encode_normalized(y));
}

HyperVector forward2(const std::function<double(double, double)>& f,
                     const ProductEncoder& pe, const Quadrature& q_x,
                     const Quadrature& q_y) {
  const std::size_t nx = q_x.size();
  const std::size_t ny = q_y.size();
  const std::size_t dim = pe.dim();
  const NormalizedEncoder& ex = pe.axis(Axis::X);
  const NormalizedEncoder& ey = pe.axis(Axis::Y);

  // Unnormalized axis encodings at all nodes (node-major); the 1/(n n')
  // factors fold into the scalar node coefficients.
  std::vector<std::vector<double>> ax(nx), ay(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    ax[i].resize(dim);
    ex.base().encode_into(q_x.nodes()[i], ax[i]);
  }
  for (std::size_t j = 0; j < ny; ++j) {
    ay[j].resize(dim);
    ey.base().encode_into(q_y.nodes()[j], ay[j]);
  }

  std::vector<double> coef(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    const double xi = q_x.nodes()[i];
    const double wx = q_x.weights()[i] / ex.norm_at(xi);
    for (std::size_t j = 0; j < ny; ++j) {
      const double yj = q_y.nodes()[j];
      const double v = f(xi, yj);
      if (!std::isfinite(v)) {
        throw NumericalError("forward2: f evaluates non-finite at node (" +
                             std::to_string(xi) + ", " + std::to_string(yj) +
                             ")");
      }
      coef[i * ny + j] = wx * q_y.weights()[j] * v / ey.norm_at(yj);
    }
  }

  std::vector<double> out(dim);
  const std::int64_t nblocks =
      static_cast<std::int64_t>((dim + kSumBlock - 1) / kSumBlock);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t begin = static_cast<std::size_t>(blk) * kSumBlock;
    const std::size_t end = std::min(begin + kSumBlock, dim);
    for (std::size_t s = begin; s < end; ++s) out[s] = 0.0;
    std::vector<double> comp(end - begin, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
      const double* xi = ax[i].data();
      for (std::size_t j = 0; j < ny; ++j) {
        const double* yj = ay[j].data();
        const double c = coef[i * ny + j];
        for (std::size_t s = begin; s < end; ++s) {
          const double term = c * xi[s] * yj[s] - comp[s - begin];
          const double next = out[s] + term;
          comp[s - begin] = (next - out[s]) - term;
          out[s] = next;
        }
      }
    }
  }
  return HyperVector(std::move(out));
}

double marginal_eval(const HyperVector& F, const ProductEncoder& pe, double x,
                     const HyperVector& one_Y) {
  return inner_scaled(F, bind(pe.axis(Axis::X).encode_normalized(x), one_Y));
}

HyperVector condition(const HyperVector& F, const ProductEncoder& pe,
                      Axis axis, double value) {
  return bind(F, pe.axis(axis).encode_normalized(value));
}

double partial_derivative_eval(const HyperVector& F, const ProductEncoder& pe,
                               double x, double y, Axis wrt,
                               const DerivativeSpec& spec) {
  const Axis other = wrt == Axis::X ? Axis::Y : Axis::X;
  const double wrt_coord = wrt == Axis::X ? x : y;
  const double other_coord = wrt == Axis::X ? y : x;
  const HyperVector deriv =
      encoding_derivative(pe.axis(wrt), wrt_coord, spec);
  const HyperVector plain = pe.axis(other).encode_normalized(other_coord);
  return inner_scaled(F, bind(deriv, plain));
}

CsvTable marginal_curve(const HyperVector& F, const ProductEncoder& pe,
                        const HyperVector& one_Y,
                        std::span<const double> points) {
  CsvTable table;
  table.columns = {"x", "marginal"};
  for (const double x : points) {
    table.rows.push_back({x, marginal_eval(F, pe, x, one_Y)});
  }
  return table;
}

double zero_centering_stat(const Encoder& enc, std::size_t n_points,
                           std::uint64_t sample_seed) {
  if (n_points == 0) throw ConfigError("zero_centering_stat: need points");
  const Domain1D domain = enc.domain();
  std::vector<double> buf(enc.dim());
  std::vector<double> abs_means(n_points);
  for (std::size_t p = 0; p < n_points; ++p) {
    const double x =
        domain.a + domain.length() * unit_open(prf(sample_seed, 0x5a7e, p));
    enc.encode_into(x, buf);
    const double mean = kahan_total(buf) / static_cast<double>(enc.dim());
    abs_means[p] = std::abs(mean);
  }
  return kahan_total(abs_means) / static_cast<double>(n_points);
}

}  // namespace hdt
