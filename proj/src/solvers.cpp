#include "hdt/solvers.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "hdt/errors.hpp"
#include "hdt/kernels.hpp"

namespace hdt {

namespace {

Eigen::MatrixXd assemble_gram(const std::vector<FunctionalRow>& rows) {
  const std::int64_t m = static_cast<std::int64_t>(rows.size());
  Eigen::MatrixXd gram(m, m);
  // Upper triangle flattened so entries can be computed independently.
  const std::int64_t npairs = m * (m + 1) / 2;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t idx = 0; idx < npairs; ++idx) {
    // Row-major triangle walk: i is the largest row with i(i+1)/2 <= idx.
    auto i = static_cast<std::int64_t>(
        (std::sqrt(8.0 * static_cast<double>(idx) + 1.0) - 1.0) / 2.0);
    while (i * (i + 1) / 2 > idx) --i;
    while ((i + 1) * (i + 2) / 2 <= idx) ++i;
    const std::int64_t base = i * (i + 1) / 2;
    const std::int64_t k = idx - base;
    const double g = serial::dot_scaled(rows[static_cast<std::size_t>(i)].r.values(),
                                        rows[static_cast<std::size_t>(k)].r.values());
    gram(i, k) = g;
    gram(k, i) = g;
  }
  return gram;
}

// Plain conjugate gradient on the (symmetric) dual system.
Eigen::VectorXd conjugate_gradient(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& b, int max_iters,
                                   double tol, int* iterations) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double threshold = tol * tol * b.squaredNorm();
  int it = 0;
  for (; it < max_iters && rr > threshold; ++it) {
    const Eigen::VectorXd ap = a * p;
    const double denom = p.dot(ap);
    if (!(denom > 0.0)) break;
    const double alpha = rr / denom;
    x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  if (iterations) *iterations = it;
  if (rr > threshold) {
    throw NumericalError("ridge_solve: conjugate-gradient fallback did not "
                         "converge (system too ill-conditioned)");
  }
  return x;
}

HyperVector combine_rows(const std::vector<FunctionalRow>& rows,
                         const Eigen::VectorXd& alpha) {
  const std::size_t dim = rows.front().r.dim();
  const std::size_t m = rows.size();
  std::vector<double> out(dim);
  const std::int64_t nblocks =
      static_cast<std::int64_t>((dim + kSumBlock - 1) / kSumBlock);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t begin = static_cast<std::size_t>(blk) * kSumBlock;
    const std::size_t end = std::min(begin + kSumBlock, dim);
    std::vector<double> comp(end - begin, 0.0);
    for (std::size_t s = begin; s < end; ++s) out[s] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = alpha(static_cast<Eigen::Index>(i));
      const auto vals = rows[i].r.values();
      for (std::size_t s = begin; s < end; ++s) {
        const double term = c * vals[s] - comp[s - begin];
        const double next = out[s] + term;
        comp[s - begin] = (next - out[s]) - term;
        out[s] = next;
      }
    }
  }
  return HyperVector(std::move(out));
}

}  // namespace

HyperVector ridge_solve(const RidgeProblem& problem, SolveInfo* info) {
  const std::size_t m = problem.rows.size();
  if (m == 0) {
    throw ConfigError("ridge_solve: empty system (no rows)");
  }
  const std::size_t dim = problem.rows.front().r.dim();
  for (const FunctionalRow& row : problem.rows) {
    if (row.r.dim() != dim) {
      throw DimensionMismatchError("ridge_solve: rows have mixed dimensions");
    }
  }
  if (problem.ridge < 0.0) {
    throw ConfigError("ridge_solve: ridge must be >= 0");
  }

  const Eigen::MatrixXd gram = assemble_gram(problem.rows);
  Eigen::VectorXd targets(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    targets(static_cast<Eigen::Index>(i)) = problem.rows[i].target;
  }

  SolveInfo local;
  Eigen::MatrixXd system = gram;
  system.diagonal().array() += problem.ridge;

  Eigen::VectorXd alpha;
  bool solved = false;
  if (problem.ridge == 0.0) {
    // Unregularized Gram matrices are singular whenever rows repeat; the
    // iterative path still returns the minimum-norm-ish solution.
    std::fprintf(stderr,
                 "ridge_solve: ridge = 0, using conjugate-gradient path\n");
    local.used_cg = true;
    alpha = conjugate_gradient(system, targets, static_cast<int>(10 * m + 100),
                               1e-12, &local.cg_iterations);
    solved = true;
  } else {
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() == Eigen::Success) {
      alpha = llt.solve(targets);
      solved = true;
    } else {
      local.jittered = true;
      const double jitter =
          1e-10 * gram.trace() / static_cast<double>(m);
      Eigen::MatrixXd retry = system;
      retry.diagonal().array() += jitter;
      Eigen::LLT<Eigen::MatrixXd> llt2(retry);
      if (llt2.info() == Eigen::Success) {
        alpha = llt2.solve(targets);
        solved = true;
      } else {
        local.used_cg = true;
        alpha = conjugate_gradient(system, targets,
                                   static_cast<int>(10 * m + 100), 1e-12,
                                   &local.cg_iterations);
        solved = true;
      }
    }
  }
  if (!solved) {
    throw NumericalError("ridge_solve: conditioning failure");
  }

  local.residual_inf = (system * alpha - targets).lpNorm<Eigen::Infinity>();
  if (info) *info = local;
  return combine_rows(problem.rows, alpha);
}

FunctionalRow ode_row(const NormalizedEncoder& enc, double x,
                      std::span<const std::function<double(double)>> coeffs,
                      double rhs, const DerivativeSpec& spec) {
  if (coeffs.empty()) {
    throw ConfigError("ode_row: need at least the order-0 coefficient");
  }
  const std::size_t dim = enc.dim();
  std::vector<double> sum(dim, 0.0), comp(dim, 0.0);
  for (std::size_t order = 0; order < coeffs.size(); ++order) {
    const double a = coeffs[order] ? coeffs[order](x) : 0.0;
    if (a == 0.0) continue;
    const HyperVector term =
        encoding_derivative(enc, x, spec.with_order(static_cast<int>(order)));
    kahan_axpy(sum, comp, a, term.values());
  }
  return {HyperVector(std::move(sum)), rhs};
}

FunctionalRow ode_row(const NormalizedEncoder& enc, double x,
                      std::span<const double> coeffs, double rhs,
                      const DerivativeSpec& spec) {
  std::vector<std::function<double(double)>> fns;
  fns.reserve(coeffs.size());
  for (const double a : coeffs) {
    fns.push_back([a](double) { return a; });
  }
  return ode_row(enc, x, fns, rhs, spec);
}

FunctionalRow boundary_row(const NormalizedEncoder& enc, double x, int order,
                           double value, const DerivativeSpec& spec) {
  return {encoding_derivative(enc, x, spec.with_order(order)), value};
}

FunctionalRow data_row(const NormalizedEncoder& enc, double x, double y) {
  return {enc.encode_normalized(x), y};
}

RidgeProblem fredholm_rows(const ProductEncoder& pe,
                           const NormalizedEncoder& enc_f,
                           const HyperVector& K, double lambda_int,
                           const SampledFunction& b,
                           std::span<const double> points, double ridge) {
  if (enc_f.base().to_config() != pe.axis(Axis::X).base().to_config()) {
    throw ConfigError("fredholm_rows: enc_f must match the kernel's "
                      "integration axis encoder (same parameters and seed)");
  }
  if (K.dim() != pe.dim()) {
    throw DimensionMismatchError("fredholm_rows: K does not match the pair "
                                 "encoder dimension");
  }
  RidgeProblem problem;
  problem.ridge = ridge;
  problem.rows.reserve(points.size());
  for (const double x : points) {
    const HyperVector conditioned =
        bind(K, pe.axis(Axis::Y).encode_normalized(x));
    HyperVector r = axpy(1.0, enc_f.encode_normalized(x), -lambda_int,
                         conditioned);
    problem.rows.push_back({std::move(r), b(x)});
  }
  return problem;
}

OdePreset OdePreset::decay(double k) {
  OdePreset p;
  p.name = "decay";
  p.k = k;
  p.coeffs = {k, 1.0};
  p.bcs = {{0.0, 0, 1.0}};
  p.analytic = [k](double x) { return std::exp(-k * x); };
  return p;
}

OdePreset OdePreset::harmonic(double k) {
  OdePreset p;
  p.name = "harmonic";
  p.k = k;
  p.coeffs = {k * k, 0.0, 1.0};
  p.bcs = {{0.0, 0, 1.0}, {0.0, 1, 0.0}};
  p.analytic = [k](double x) { return std::cos(k * x); };
  return p;
}

OdePreset OdePreset::damped(double k, double beta) {
  if (!(beta < k)) {
    throw ConfigError("OdePreset::damped: need beta < k (underdamped)");
  }
  OdePreset p;
  p.name = "damped";
  p.k = k;
  p.beta = beta;
  p.coeffs = {k * k, 2.0 * beta, 1.0};
  p.bcs = {{0.0, 0, 1.0}, {0.0, 1, 0.0}};
  const double omega = std::sqrt(k * k - beta * beta);
  p.analytic = [beta, omega](double x) {
    return std::exp(-beta * x) *
           (std::cos(omega * x) + (beta / omega) * std::sin(omega * x));
  };
  return p;
}

OdePreset OdePreset::by_name(const std::string& name, double k, double beta) {
  if (name == "decay") return decay(k);
  if (name == "harmonic") return harmonic(k);
  if (name == "damped") return damped(k, beta);
  throw ConfigError("unknown ode preset '" + name +
                    "' (expected decay, harmonic, or damped)");
}

RidgeProblem ode_problem(const NormalizedEncoder& enc,
                         std::span<const double> coeffs,
                         const std::function<double(double)>& rhs,
                         std::span<const OdePreset::Bc> bcs,
                         std::span<const double> collocation,
                         const DerivativeSpec& spec, double ridge) {
  RidgeProblem problem;
  problem.ridge = ridge;
  problem.rows.reserve(collocation.size() + bcs.size());
  for (const double x : collocation) {
    problem.rows.push_back(ode_row(enc, x, coeffs, rhs(x), spec));
  }
  for (const OdePreset::Bc& bc : bcs) {
    problem.rows.push_back(boundary_row(enc, bc.x, bc.order, bc.value, spec));
  }
  return problem;
}

}  // namespace hdt
