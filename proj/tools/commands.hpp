#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Option structs and entry points for the CLI subcommands. Every command
// writes CSV files with a metadata block echoing the fully-resolved
// configuration, so a run can be reproduced from its own output.

namespace hdtcli {

struct NormalizeOptions {
  double a = 0.0;
  double b = 1.0;
  double lambda = 0.25;
  bool periodic = false;
  std::size_t cells = 4;
  std::size_t grid = 100;
  int iters = 10;
  std::string out;
  bool svg = false;
};
void cmd_normalize(const NormalizeOptions& opt);

struct KernelsOptions {
  double a = 0.0;
  double b = 1.0;
  double lambda = 0.25;
  std::vector<double> slices;  // default: 5 evenly spaced in [a, b]
  std::size_t points = 500;
  std::size_t grid = 100;
  int iters = 10;
  std::string out;
  bool svg = false;
};
void cmd_kernels(const KernelsOptions& opt);

struct RecoverOptions {
  std::string preset = "xsin10x";
  double a = 0.0;
  double b = 1.0;
  double lambda = 0.05;
  std::vector<std::size_t> dims = {5000, 10000, 50000};
  std::vector<double> lengths;  // when set, sweeps lengths at fixed dim
  std::size_t dim = 50000;
  std::uint64_t seed = 1;
  std::size_t points = 500;
  std::size_t grid = 100;
  int iters = 10;
  std::string out;
  bool svg = false;
};
void cmd_recover(const RecoverOptions& opt);

struct DerivativesOptions {
  double a = 0.0;
  double b = 1.0;
  double lambda = 0.25;
  double tau = 0.0;  // 0: lambda/20
  double h = 0.0;    // 0: lambda/5
  std::size_t component = 0;
  std::size_t points = 500;
  std::uint64_t seed = 1;
  bool rescale = true;
  std::string out;
  bool svg = false;
};
void cmd_derivatives(const DerivativesOptions& opt);

struct SolveOdeOptions {
  std::string preset = "decay";  // decay | harmonic | damped | custom
  double k = 10.0;
  double beta = 2.0;
  std::string coeffs;  // custom: "a0,a1,..."
  std::string bcs;     // custom: "x:order:value;..."
  double a = 0.0;
  double b = 1.0;
  std::size_t dim = 5000;
  double length = 0.05;
  double h = 0.0;  // 0: length/5
  std::size_t m = 500;
  double ridge = 1.0;
  std::uint64_t seed = 1;
  std::size_t grid = 100;
  int iters = 10;
  std::size_t eval_points = 500;
  std::string out;
  bool svg = false;
};
void cmd_solve_ode(const SolveOdeOptions& opt);

struct SolveFredholmOptions {
  std::string kernel_preset = "yx";  // yx | zero
  std::string kernel_table;          // CSV table overrides the preset
  std::string b_preset = "twothirdsx";
  double lambda_f = 1.0;
  double a = 0.0;
  double b = 1.0;
  std::size_t dim = 10000;
  double length_phi = 0.25;
  double length_psi = 0.9;
  std::size_t m = 200;
  double ridge = 1.0;
  std::uint64_t seed = 1;
  std::size_t grid = 100;
  int iters = 10;
  std::size_t eval_points = 500;
  std::string out;
  bool svg = false;
};
void cmd_solve_fredholm(const SolveFredholmOptions& opt);

struct FuzzyBaselineOptions {
  std::string preset = "xsin10x";
  double a = 0.0;
  double b = 1.0;
  std::size_t bases = 21;
  std::size_t dim = 10000;
  double length = 0.05;
  std::uint64_t seed = 1;
  std::size_t points = 500;
  std::size_t grid = 100;
  int iters = 10;
  std::string out;
  bool svg = false;
};
void cmd_fuzzy_baseline(const FuzzyBaselineOptions& opt);

}  // namespace hdtcli
