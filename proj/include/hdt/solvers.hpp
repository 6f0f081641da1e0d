#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hdt/calculus.hpp"
#include "hdt/hypervector.hpp"
#include "hdt/multivariate.hpp"
#include "hdt/normalization.hpp"
#include "hdt/sampled_function.hpp"

namespace hdt {

/// One linear constraint inner_scaled(F, r) = target.
struct FunctionalRow {
  HyperVector r;
  double target;
};

/// Least-squares system over constraint rows with ridge penalty
/// ridge * inner_scaled(F, F); solved in the dual (m x m Gram) form.
struct RidgeProblem {
  std::vector<FunctionalRow> rows;
  double ridge = 1.0;
};

struct SolveInfo {
  double residual_inf = 0.0;  // ||(G + ridge I) alpha - B||_inf
  bool jittered = false;
  bool used_cg = false;
  int cg_iterations = 0;
};

/// Solve (G + ridge I) alpha = targets with G_ik = inner_scaled(r_i, r_k),
/// then F = sum_i alpha_i r_i. Cholesky first; one jitter retry
/// (+1e-10 tr(G)/m on the diagonal); conjugate-gradient fallback; throws
/// NumericalError when all fail. ridge = 0 goes straight to CG.
HyperVector ridge_solve(const RidgeProblem& problem, SolveInfo* info = nullptr);

/// Row imposing sum_k a_k(x) f^(k)(x) = rhs at one collocation point:
/// r = sum_k a_k(x) * encoding_derivative(x, order k).
FunctionalRow ode_row(const NormalizedEncoder& enc, double x,
                      std::span<const std::function<double(double)>> coeffs,
                      double rhs, const DerivativeSpec& spec);
FunctionalRow ode_row(const NormalizedEncoder& enc, double x,
                      std::span<const double> coeffs, double rhs,
                      const DerivativeSpec& spec);

/// Boundary condition f^(order)(x) = value (order 0: plain encoding).
FunctionalRow boundary_row(const NormalizedEncoder& enc, double x, int order,
                           double value, const DerivativeSpec& spec);

/// Observation f(x) = y; makes regression and equation solving one system.
FunctionalRow data_row(const NormalizedEncoder& enc, double x, double y);

/// Second-kind integral equation f(x) = b(x) + lambda_int * K f reduced to
/// rows r_i = enc_f(x_i) - lambda_int * (K ⊙ enc_psi(x_i)), where K is the
/// bivariate transform of the kernel with its integration variable on the
/// pair's X axis. enc_f must match that axis's encoder.
RidgeProblem fredholm_rows(const ProductEncoder& pe,
                           const NormalizedEncoder& enc_f,
                           const HyperVector& K, double lambda_int,
                           const SampledFunction& b,
                           std::span<const double> points, double ridge);

/// Canonical linear ODE test problems with closed-form solutions.
struct OdePreset {
  struct Bc {
    double x;
    int order;
    double value;
  };

  std::string name;
  double k = 10.0;
  double beta = 0.0;
  std::vector<double> coeffs;  // a_0 .. a_n
  std::vector<Bc> bcs;
  std::function<double(double)> analytic;

  static OdePreset decay(double k);
  static OdePreset harmonic(double k);
  static OdePreset damped(double k, double beta);
  /// name in {decay, harmonic, damped}; throws ConfigError otherwise.
  static OdePreset by_name(const std::string& name, double k, double beta);
};

/// Assemble collocation + boundary rows for constant-coefficient equations.
RidgeProblem ode_problem(const NormalizedEncoder& enc,
                         std::span<const double> coeffs,
                         const std::function<double(double)>& rhs,
                         std::span<const OdePreset::Bc> bcs,
                         std::span<const double> collocation,
                         const DerivativeSpec& spec, double ridge);

}  // namespace hdt
