#include "hdt/encoder.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hdt/errors.hpp"
#include "hdt/kernels.hpp"
#include "hdt/prf.hpp"

namespace hdt {

namespace {

// Per-component sub-streams. The component index is shifted so the kinds
// of one component never collide with another component's.
enum StreamKind : std::uint64_t {
  kAnchorValues = 0,
  kSwitchPhase = 1,
  kNoiseGate = 2,
  kNoiseValue = 3,
  kSlotBase = 4,  // 4, 5, 6: discrete slots
};

inline std::uint64_t stream_of(std::size_t component, std::uint64_t kind) {
  return (static_cast<std::uint64_t>(component) << 3) | kind;
}

inline double triangular(double distance, double lambda) {
  const double v = 1.0 - distance / lambda;
  return v > 0.0 ? v : 0.0;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const ConfigMap& config, const std::string& key) {
  const auto it = config.find(key);
  if (it == config.end()) {
    throw ConfigError("encoder config: missing key '" + key + "'");
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("encoder config: bad numeric value for '" + key + "'");
  }
}

std::uint64_t parse_u64(const ConfigMap& config, const std::string& key) {
  const auto it = config.find(key);
  if (it == config.end()) {
    throw ConfigError("encoder config: missing key '" + key + "'");
  }
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw ConfigError("encoder config: bad integer value for '" + key + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Encoder base

Encoder::Encoder(Domain1D domain, std::size_t dim, std::uint64_t seed)
    : domain_(domain), dim_(dim), seed_(seed) {
  if (!(domain.b - domain.a > 0.0)) {
    throw ConfigError("Encoder: domain must satisfy a < b");
  }
  if (dim == 0) {
    throw ConfigError("Encoder: dimension must be >= 1");
  }
}

void Encoder::require_in_domain(double x) const {
  if (!domain_.contains(x)) {
    throw OutOfDomainError("encode: x = " + format_double(x) +
                           " outside [" + format_double(domain_.a) + ", " +
                           format_double(domain_.b) + "]");
  }
}

void Encoder::encode_into(double x, std::span<double> out) const {
  if (out.size() != dim_) {
    throw DimensionMismatchError("encode_into: output size does not match dim");
  }
  require_in_domain(x);
  const std::int64_t nblocks =
      static_cast<std::int64_t>((dim_ + kSumBlock - 1) / kSumBlock);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t begin = static_cast<std::size_t>(blk) * kSumBlock;
    const std::size_t end = std::min(begin + kSumBlock, dim_);
    encode_span(x, begin, end, out.data() + begin);
  }
}

void Encoder::encode_into_serial(double x, std::span<double> out) const {
  if (out.size() != dim_) {
    throw DimensionMismatchError("encode_into: output size does not match dim");
  }
  require_in_domain(x);
  const std::size_t nblocks = (dim_ + kSumBlock - 1) / kSumBlock;
  for (std::size_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t begin = blk * kSumBlock;
    const std::size_t end = std::min(begin + kSumBlock, dim_);
    encode_span(x, begin, end, out.data() + begin);
  }
}

HyperVector Encoder::encode(double x) const {
  std::vector<double> out(dim_);
  encode_into(x, out);
  return HyperVector(std::move(out));
}

// ---------------------------------------------------------------------------
// IntervalStepEncoder

IntervalStepEncoder::IntervalStepEncoder(Domain1D domain, double lambda,
                                         std::size_t dim, std::uint64_t seed)
    : IntervalStepEncoder(domain, lambda, dim, seed, domain.a) {}

IntervalStepEncoder::IntervalStepEncoder(Domain1D domain, double lambda,
                                         std::size_t dim, std::uint64_t seed,
                                         double anchor_origin)
    : Encoder(domain, dim, seed), lambda_(lambda), anchor_origin_(anchor_origin) {
  if (!(lambda > 0.0)) {
    throw ConfigError("IntervalStepEncoder: lambda must be > 0");
  }
  if (lambda > domain.length()) {
    throw ConfigError(
        "IntervalStepEncoder: lambda exceeds the domain length; no anchor "
        "lattice brackets [a, b]");
  }
}

double IntervalStepEncoder::expected_kernel(double x, double xp) const {
  return triangular(std::abs(x - xp), lambda_);
}

void IntervalStepEncoder::encode_span(double x, std::size_t begin,
                                      std::size_t end, double* out) const {
  const auto cell =
      static_cast<std::int64_t>(std::floor((x - anchor_origin_) / lambda_));
  const double cell_left = anchor_origin_ + static_cast<double>(cell) * lambda_;
  for (std::size_t s = begin; s < end; ++s) {
    // One switch phase per component: the transition in cell k sits at
    // x_k + lambda*u_s, so distances map to component-flip probabilities
    // identically across cell boundaries.
    const double u = unit_open(prf(seed(), stream_of(s, kSwitchPhase), 0));
    const double t = cell_left + lambda_ * u;
    const std::int64_t k = (x < t) ? cell : cell + 1;
    out[s - begin] = rademacher(
        prf(seed(), stream_of(s, kAnchorValues), static_cast<std::uint64_t>(k)));
  }
}

void IntervalStepEncoder::anchor_span(std::int64_t k, std::size_t begin,
                                      std::size_t end, double* out) const {
  for (std::size_t s = begin; s < end; ++s) {
    out[s - begin] = rademacher(
        prf(seed(), stream_of(s, kAnchorValues), static_cast<std::uint64_t>(k)));
  }
}

ConfigMap IntervalStepEncoder::to_config() const {
  return {{"type", "interval_step"},
          {"a", format_double(domain().a)},
          {"b", format_double(domain().b)},
          {"lambda", format_double(lambda_)},
          {"anchor_origin", format_double(anchor_origin_)},
          {"dim", std::to_string(dim())},
          {"seed", std::to_string(seed())}};
}

// ---------------------------------------------------------------------------
// SigmoidEncoder

SigmoidEncoder::SigmoidEncoder(Domain1D domain, double lambda, std::size_t dim,
                               std::uint64_t seed)
    : SigmoidEncoder(domain, lambda, dim, seed, lambda / 20.0, domain.a) {}

SigmoidEncoder::SigmoidEncoder(Domain1D domain, double lambda, std::size_t dim,
                               std::uint64_t seed, double tau,
                               double anchor_origin)
    : Encoder(domain, dim, seed),
      lambda_(lambda),
      tau_(tau),
      anchor_origin_(anchor_origin) {
  if (!(lambda > 0.0)) {
    throw ConfigError("SigmoidEncoder: lambda must be > 0");
  }
  if (lambda > domain.length()) {
    throw ConfigError("SigmoidEncoder: lambda exceeds the domain length");
  }
  if (!(tau > 0.0)) {
    throw ConfigError("SigmoidEncoder: tau must be > 0");
  }
}

double SigmoidEncoder::expected_kernel(double x, double xp) const {
  return triangular(std::abs(x - xp), lambda_);
}

void SigmoidEncoder::encode_span(double x, std::size_t begin, std::size_t end,
                                 double* out) const {
  const auto cell =
      static_cast<std::int64_t>(std::floor((x - anchor_origin_) / lambda_));
  const double cell_left = anchor_origin_ + static_cast<double>(cell) * lambda_;
  for (std::size_t s = begin; s < end; ++s) {
    const double u = unit_open(prf(seed(), stream_of(s, kSwitchPhase), 0));
    const double t = cell_left + lambda_ * u;
    const double vk = rademacher(prf(seed(), stream_of(s, kAnchorValues),
                                     static_cast<std::uint64_t>(cell)));
    const double vk1 = rademacher(prf(seed(), stream_of(s, kAnchorValues),
                                      static_cast<std::uint64_t>(cell + 1)));
    const double sig = 1.0 / (1.0 + std::exp(-(x - t) / tau_));
    out[s - begin] = vk + (vk1 - vk) * sig;
  }
}

void SigmoidEncoder::derivative_span(double x, int order, std::size_t begin,
                                     std::size_t end, double* out) const {
  if (order != 1 && order != 2) {
    throw ConfigError("SigmoidEncoder: analytic derivatives available for "
                      "orders 1 and 2 only");
  }
  const auto cell =
      static_cast<std::int64_t>(std::floor((x - anchor_origin_) / lambda_));
  const double cell_left = anchor_origin_ + static_cast<double>(cell) * lambda_;
  for (std::size_t s = begin; s < end; ++s) {
    const double u = unit_open(prf(seed(), stream_of(s, kSwitchPhase), 0));
    const double t = cell_left + lambda_ * u;
    const double vk = rademacher(prf(seed(), stream_of(s, kAnchorValues),
                                     static_cast<std::uint64_t>(cell)));
    const double vk1 = rademacher(prf(seed(), stream_of(s, kAnchorValues),
                                      static_cast<std::uint64_t>(cell + 1)));
    const double sig = 1.0 / (1.0 + std::exp(-(x - t) / tau_));
    const double jump = vk1 - vk;
    if (order == 1) {
      out[s - begin] = jump * sig * (1.0 - sig) / tau_;
    } else {
      out[s - begin] =
          jump * sig * (1.0 - sig) * (1.0 - 2.0 * sig) / (tau_ * tau_);
    }
  }
}

ConfigMap SigmoidEncoder::to_config() const {
  return {{"type", "sigmoid"},
          {"a", format_double(domain().a)},
          {"b", format_double(domain().b)},
          {"lambda", format_double(lambda_)},
          {"tau", format_double(tau_)},
          {"anchor_origin", format_double(anchor_origin_)},
          {"dim", std::to_string(dim())},
          {"seed", std::to_string(seed())}};
}

// ---------------------------------------------------------------------------
// PeriodicEncoder

PeriodicEncoder::PeriodicEncoder(Domain1D domain, std::size_t n_cells,
                                 std::size_t dim, std::uint64_t seed)
    : Encoder(domain, dim, seed),
      n_cells_(n_cells),
      lambda_(domain.length() / static_cast<double>(n_cells)) {
  if (n_cells < 2) {
    throw ConfigError("PeriodicEncoder: n_cells must be >= 2");
  }
}

double PeriodicEncoder::wrapped_distance(double x, double xp) const noexcept {
  const double period = domain().length();
  const double d = std::abs(x - xp);
  return d <= period / 2.0 ? d : period - d;
}

double PeriodicEncoder::expected_kernel(double x, double xp) const {
  return triangular(wrapped_distance(x, xp), lambda_);
}

void PeriodicEncoder::encode_span(double x, std::size_t begin, std::size_t end,
                                  double* out) const {
  const auto n = static_cast<std::int64_t>(n_cells_);
  const auto cell =
      static_cast<std::int64_t>(std::floor((x - domain().a) / lambda_));
  const double cell_left = domain().a + static_cast<double>(cell) * lambda_;
  for (std::size_t s = begin; s < end; ++s) {
    const double u = unit_open(prf(seed(), stream_of(s, kSwitchPhase), 0));
    const double t = cell_left + lambda_ * u;
    const std::int64_t k = (x < t) ? cell : cell + 1;
    const std::int64_t wrapped = ((k % n) + n) % n;
    out[s - begin] = rademacher(prf(seed(), stream_of(s, kAnchorValues),
                                    static_cast<std::uint64_t>(wrapped)));
  }
}

ConfigMap PeriodicEncoder::to_config() const {
  return {{"type", "periodic"},
          {"a", format_double(domain().a)},
          {"b", format_double(domain().b)},
          {"n_cells", std::to_string(n_cells_)},
          {"dim", std::to_string(dim())},
          {"seed", std::to_string(seed())}};
}

// ---------------------------------------------------------------------------
// EpsilonMixEncoder

EpsilonMixEncoder::EpsilonMixEncoder(std::shared_ptr<const Encoder> base,
                                     double epsilon)
    : Encoder(base->domain(), base->dim(), base->seed()),
      base_(std::move(base)),
      epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("EpsilonMixEncoder: epsilon must lie in [0, 1]");
  }
}

double EpsilonMixEncoder::length_scale() const noexcept {
  return base_->length_scale();
}

double EpsilonMixEncoder::expected_kernel(double x, double xp) const {
  const double delta = (x == xp) ? 1.0 : 0.0;
  return (1.0 - epsilon_) * base_->expected_kernel(x, xp) + epsilon_ * delta;
}

void EpsilonMixEncoder::encode_span(double x, std::size_t begin,
                                    std::size_t end, double* out) const {
  base_->encode_span(x, begin, end, out);
  if (epsilon_ == 0.0) return;
  for (std::size_t s = begin; s < end; ++s) {
    const double gate = unit_open(prf(seed(), stream_of(s, kNoiseGate), 0));
    if (gate < epsilon_) {
      out[s - begin] =
          rademacher(prf(seed(), stream_of(s, kNoiseValue), value_bits(x)));
    }
  }
}

ConfigMap EpsilonMixEncoder::to_config() const {
  ConfigMap config = base_->to_config();
  config["epsilon"] = format_double(epsilon_);
  return config;
}

// ---------------------------------------------------------------------------
// DiscreteTripleEncoder

DiscreteTripleEncoder::DiscreteTripleEncoder(std::array<std::size_t, 3> sizes,
                                             std::size_t dim,
                                             std::uint64_t seed,
                                             TripleKernel kernel)
    : sizes_(sizes), dim_(dim), seed_(seed), kernel_(kernel) {
  for (const std::size_t n : sizes) {
    if (n == 0) throw ConfigError("DiscreteTripleEncoder: empty slot set");
  }
  if (dim == 0) throw ConfigError("DiscreteTripleEncoder: dim must be >= 1");
}

TripleKernel DiscreteTripleEncoder::kernel_for_length_scale(double l) {
  if (l < 1.0 / 3.0) return TripleKernel::product_all;
  if (l < 2.0 / 3.0) return TripleKernel::pairwise;
  return TripleKernel::slotwise;
}

void DiscreteTripleEncoder::check_index(const Index3& x) const {
  for (int j = 0; j < 3; ++j) {
    if (x[static_cast<std::size_t>(j)] >= sizes_[static_cast<std::size_t>(j)]) {
      throw OutOfDomainError("DiscreteTripleEncoder: index " +
                             std::to_string(x[static_cast<std::size_t>(j)]) +
                             " out of range for slot " + std::to_string(j));
    }
  }
}

HyperVector DiscreteTripleEncoder::encode(const Index3& x) const {
  check_index(x);
  std::vector<double> out(dim_);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  for (std::size_t s = 0; s < dim_; ++s) {
    const double r0 = rademacher(prf(seed_, stream_of(s, kSlotBase + 0), x[0]));
    const double r1 = rademacher(prf(seed_, stream_of(s, kSlotBase + 1), x[1]));
    const double r2 = rademacher(prf(seed_, stream_of(s, kSlotBase + 2), x[2]));
    switch (kernel_) {
      case TripleKernel::product_all:
        out[s] = r0 * r1 * r2;
        break;
      case TripleKernel::pairwise:
        out[s] = (r0 * r1 + r1 * r2 + r2 * r0) * inv_sqrt3;
        break;
      case TripleKernel::slotwise:
        out[s] = (r0 + r1 + r2) * inv_sqrt3;
        break;
    }
  }
  return HyperVector(std::move(out));
}

double DiscreteTripleEncoder::expected_kernel(const Index3& x,
                                              const Index3& xp) const {
  check_index(x);
  check_index(xp);
  const double d0 = x[0] == xp[0] ? 1.0 : 0.0;
  const double d1 = x[1] == xp[1] ? 1.0 : 0.0;
  const double d2 = x[2] == xp[2] ? 1.0 : 0.0;
  switch (kernel_) {
    case TripleKernel::product_all:
      return d0 * d1 * d2;
    case TripleKernel::pairwise:
      return (d0 * d1 + d1 * d2 + d2 * d0) / 3.0;
    case TripleKernel::slotwise:
      return (d0 + d1 + d2) / 3.0;
  }
  return 0.0;
}

double DiscreteTripleEncoder::normalization_constant() const {
  const double u = static_cast<double>(sizes_[0]);
  const double v = static_cast<double>(sizes_[1]);
  const double w = static_cast<double>(sizes_[2]);
  switch (kernel_) {
    case TripleKernel::product_all:
      return 1.0;
    case TripleKernel::pairwise:
      return std::sqrt((u + v + w) / 3.0);
    case TripleKernel::slotwise:
      return std::sqrt((u * v + v * w + w * u) / 3.0);
  }
  return 1.0;
}

double DiscreteTripleEncoder::metric(const Index3& x, const Index3& xp) noexcept {
  const double matches = (x[0] == xp[0] ? 1.0 : 0.0) +
                         (x[1] == xp[1] ? 1.0 : 0.0) +
                         (x[2] == xp[2] ? 1.0 : 0.0);
  return 1.0 - matches / 3.0;
}

ConfigMap DiscreteTripleEncoder::to_config() const {
  std::ostringstream sizes;
  sizes << sizes_[0] << "," << sizes_[1] << "," << sizes_[2];
  const char* kernel_name = kernel_ == TripleKernel::product_all ? "product_all"
                            : kernel_ == TripleKernel::pairwise  ? "pairwise"
                                                                 : "slotwise";
  return {{"type", "discrete_triple"},
          {"sizes", sizes.str()},
          {"kernel", kernel_name},
          {"dim", std::to_string(dim_)},
          {"seed", std::to_string(seed_)}};
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Encoder> make_encoder_from_config(const ConfigMap& config) {
  const auto type_it = config.find("type");
  if (type_it == config.end()) {
    throw ConfigError("encoder config: missing key 'type'");
  }
  const std::string& type = type_it->second;

  std::shared_ptr<const Encoder> enc;
  if (type == "interval_step" || type == "sigmoid") {
    const Domain1D domain{parse_double(config, "a"), parse_double(config, "b")};
    const double lambda = parse_double(config, "lambda");
    const auto dim = static_cast<std::size_t>(parse_u64(config, "dim"));
    const std::uint64_t seed = parse_u64(config, "seed");
    const double origin = config.count("anchor_origin")
                              ? parse_double(config, "anchor_origin")
                              : domain.a;
    if (type == "sigmoid") {
      const double tau = config.count("tau") ? parse_double(config, "tau")
                                             : lambda / 20.0;
      enc = std::make_shared<SigmoidEncoder>(domain, lambda, dim, seed, tau,
                                             origin);
    } else {
      enc = std::make_shared<IntervalStepEncoder>(domain, lambda, dim, seed,
                                                  origin);
    }
  } else if (type == "periodic") {
    const Domain1D domain{parse_double(config, "a"), parse_double(config, "b")};
    enc = std::make_shared<PeriodicEncoder>(
        domain, static_cast<std::size_t>(parse_u64(config, "n_cells")),
        static_cast<std::size_t>(parse_u64(config, "dim")),
        parse_u64(config, "seed"));
  } else {
    throw ConfigError("encoder config: unknown type '" + type + "'");
  }

  if (config.count("epsilon")) {
    const double eps = parse_double(config, "epsilon");
    if (eps > 0.0) {
      enc = std::make_shared<EpsilonMixEncoder>(enc, eps);
    }
  }
  return enc;
}

}  // namespace hdt
