#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "hdt/calculus.hpp"
#include "hdt/csv.hpp"
#include "hdt/encoder.hpp"
#include "hdt/errors.hpp"
#include "hdt/fuzzy.hpp"
#include "hdt/multivariate.hpp"
#include "hdt/normalization.hpp"
#include "hdt/presets.hpp"
#include "hdt/quadrature.hpp"
#include "hdt/solvers.hpp"
#include "hdt/svg.hpp"
#include "hdt/transform.hpp"

namespace hdtcli {

namespace {

using namespace hdt;

void emit(const CsvTable& table, const std::string& path, bool svg) {
  write_csv(table, path + ".csv");
  if (svg) write_svg(table, path + ".svg");
}

std::string sweep_label(const char* prefix, double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%g", prefix, value);
  return buf;
}

NormalizedEncoder normalized_step(Domain1D domain, double lambda,
                                  std::size_t dim, std::uint64_t seed,
                                  std::size_t grid, int iters) {
  auto enc = std::make_shared<IntervalStepEncoder>(domain, lambda, dim, seed);
  return make_normalized(enc, grid, iters);
}

// Bivariate table: first row lists the x grid (first cell ignored), each
// following row starts with its y value. Bilinear interpolation inside the
// grid, no extrapolation.
std::function<double(double, double)> load_kernel_table(
    const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open kernel table '" + path + "'");
  std::vector<double> xs, ys;
  std::vector<std::vector<double>> values;
  std::string line;
  bool header = true;
  while (std::getline(file, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> parsed;
    bool first = true;
    while (std::getline(row, cell, ',')) {
      if (header && first) {
        first = false;
        continue;
      }
      try {
        parsed.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("kernel table: bad numeric cell '" + cell + "'");
      }
      first = false;
    }
    if (header) {
      xs = parsed;
      header = false;
      continue;
    }
    if (parsed.size() != xs.size() + 1) {
      throw ConfigError("kernel table: row width does not match the x grid");
    }
    ys.push_back(parsed.front());
    values.emplace_back(parsed.begin() + 1, parsed.end());
  }
  if (xs.size() < 2 || ys.size() < 2) {
    throw ConfigError("kernel table: need at least a 2x2 grid");
  }
  auto grid_index = [](const std::vector<double>& grid, double v) {
    if (v < grid.front() || v > grid.back()) {
      throw OutOfDomainError("kernel table: point outside the tabulated grid");
    }
    const auto it = std::upper_bound(grid.begin(), grid.end(), v);
    std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    if (hi == grid.size()) --hi;
    if (hi == 0) ++hi;
    return hi;
  };
  return [xs, ys, values, grid_index](double y, double x) {
    const std::size_t i = grid_index(ys, y);
    const std::size_t j = grid_index(xs, x);
    const double ty = (y - ys[i - 1]) / (ys[i] - ys[i - 1]);
    const double tx = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    const double top = values[i - 1][j - 1] * (1 - tx) + values[i - 1][j] * tx;
    const double bot = values[i][j - 1] * (1 - tx) + values[i][j] * tx;
    return top * (1 - ty) + bot * ty;
  };
}

std::function<double(double, double)> kernel_by_name(const std::string& name) {
  if (name == "yx") return [](double y, double x) { return y * x; };
  if (name == "zero") return [](double, double) { return 0.0; };
  throw ConfigError("unknown kernel preset '" + name + "'");
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::istringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": bad numeric entry '" + cell +
                        "'");
    }
  }
  if (out.empty()) {
    throw ConfigError(std::string(what) + ": empty list");
  }
  return out;
}

std::vector<OdePreset::Bc> parse_bcs(const std::string& text) {
  std::vector<OdePreset::Bc> out;
  std::istringstream stream(text);
  std::string entry;
  while (std::getline(stream, entry, ';')) {
    if (entry.empty()) continue;
    std::istringstream fields(entry);
    std::string x_s, order_s, value_s;
    if (!std::getline(fields, x_s, ':') || !std::getline(fields, order_s, ':') ||
        !std::getline(fields, value_s, ':')) {
      throw ConfigError("boundary condition: expected x:order:value, got '" +
                        entry + "'");
    }
    try {
      out.push_back({std::stod(x_s), std::stoi(order_s), std::stod(value_s)});
    } catch (const std::exception&) {
      throw ConfigError("boundary condition: bad numeric field in '" + entry +
                        "'");
    }
  }
  return out;
}

}  // namespace

void cmd_normalize(const NormalizeOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  std::shared_ptr<const Encoder> enc;
  if (opt.periodic) {
    enc = std::make_shared<PeriodicEncoder>(domain, opt.cells, 1, 0);
  } else {
    enc = std::make_shared<IntervalStepEncoder>(domain, opt.lambda, 1, 0);
  }

  NormalizationTrace trace;
  solve_normalization(*enc, opt.grid, opt.iters, &trace);

  auto meta = [&](CsvTable& t) {
    t.meta("command", std::string("normalize"));
    t.meta("a", opt.a);
    t.meta("b", opt.b);
    t.meta("periodic", std::string(opt.periodic ? "true" : "false"));
    if (opt.periodic) {
      t.meta("cells", static_cast<long long>(opt.cells));
    }
    t.meta("lambda",
           opt.periodic ? domain.length() / static_cast<double>(opt.cells)
                        : opt.lambda);
    t.meta("grid", static_cast<long long>(opt.grid));
    t.meta("iters", static_cast<long long>(opt.iters));
    t.meta("final_residual", trace.residuals.back());
  };

  CsvTable n_table;
  meta(n_table);
  n_table.columns.push_back("x");
  for (std::size_t i = 0; i < trace.n_iterates.size(); ++i) {
    n_table.columns.push_back("iter_" + std::to_string(i));
  }
  for (std::size_t j = 0; j < trace.grid.size(); ++j) {
    std::vector<double> row{trace.grid[j]};
    for (const auto& iterate : trace.n_iterates) row.push_back(iterate[j]);
    n_table.rows.push_back(std::move(row));
  }
  emit(n_table, opt.out + "_n", opt.svg);

  CsvTable t_table;
  meta(t_table);
  t_table.columns.push_back("x");
  for (std::size_t i = 0; i < trace.tilde_iterates.size(); ++i) {
    t_table.columns.push_back("iter_" + std::to_string(i));
  }
  for (std::size_t j = 0; j < trace.grid.size(); ++j) {
    std::vector<double> row{trace.grid[j]};
    for (const auto& iterate : trace.tilde_iterates) row.push_back(iterate[j]);
    t_table.rows.push_back(std::move(row));
  }
  emit(t_table, opt.out + "_tilde1", opt.svg);

  // Final solution on its own, for feeding back into other tools.
  CsvTable solution;
  meta(solution);
  solution.columns = {"x", "n"};
  for (std::size_t j = 0; j < trace.grid.size(); ++j) {
    solution.rows.push_back({trace.grid[j], trace.n_iterates.back()[j]});
  }
  emit(solution, opt.out + "_solution", false);
}

void cmd_kernels(const KernelsOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  auto enc = std::make_shared<IntervalStepEncoder>(domain, opt.lambda, 1, 0);
  const NormalizationFn norm = solve_normalization(*enc, opt.grid, opt.iters);

  std::vector<double> slices = opt.slices;
  if (slices.empty()) {
    for (int i = 0; i < 5; ++i) {
      slices.push_back(opt.a + domain.length() * i / 4.0);
    }
  }
  for (const double s : slices) {
    if (!domain.contains(s)) {
      throw ConfigError("kernels: slice point outside the domain");
    }
  }

  CsvTable table;
  table.meta("command", std::string("kernels"));
  table.meta("a", opt.a);
  table.meta("b", opt.b);
  table.meta("lambda", opt.lambda);
  table.meta("grid", static_cast<long long>(opt.grid));
  table.meta("iters", static_cast<long long>(opt.iters));
  table.meta("points", static_cast<long long>(opt.points));
  for (std::size_t i = 0; i < slices.size(); ++i) {
    table.meta("slice_" + std::to_string(i), slices[i]);
  }
  table.columns.push_back("x");
  for (std::size_t i = 0; i < slices.size(); ++i) {
    table.columns.push_back("unnorm_" + std::to_string(i));
    table.columns.push_back("norm_" + std::to_string(i));
  }
  for (const double x : linspace(opt.a, opt.b, opt.points)) {
    std::vector<double> row{x};
    for (const double s : slices) {
      const double k = enc->expected_kernel(x, s);
      row.push_back(k);
      row.push_back(k / (norm.eval(x) * norm.eval(s)));
    }
    table.rows.push_back(std::move(row));
  }
  emit(table, opt.out + "_kernels", opt.svg);
}

void cmd_recover(const RecoverOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  const auto fn = function_preset(opt.preset);
  const SampledFunction f = SampledFunction::from_function(fn);

  const bool sweep_lengths = !opt.lengths.empty();
  struct Setting {
    std::string label;
    std::size_t dim;
    double lambda;
  };
  std::vector<Setting> settings;
  if (sweep_lengths) {
    for (const double l : opt.lengths) {
      settings.push_back({sweep_label("l", l), opt.dim, l});
    }
  } else {
    for (const std::size_t d : opt.dims) {
      settings.push_back(
          {sweep_label("D", static_cast<double>(d)), d, opt.lambda});
    }
  }

  CsvTable summary;
  summary.meta("command", std::string("recover"));
  summary.meta("preset", opt.preset);
  summary.meta("a", opt.a);
  summary.meta("b", opt.b);
  summary.meta("seed", static_cast<long long>(opt.seed));
  summary.meta("points", static_cast<long long>(opt.points));
  summary.meta("sweep", std::string(sweep_lengths ? "lengths" : "dims"));
  summary.columns = {"param", "rmse_vs_true", "rmse_vs_oracle",
                     "rmse_interior_vs_true"};

  for (const Setting& setting : settings) {
    const NormalizedEncoder enc = normalized_step(
        domain, setting.lambda, setting.dim, opt.seed, opt.grid, opt.iters);
    const Quadrature q = Quadrature::default_for(enc);
    const HyperVector F = forward(f, enc, q);

    CsvTable table;
    table.meta("command", std::string("recover"));
    table.meta("label", setting.label);
    table.meta("preset", opt.preset);
    table.meta("a", opt.a);
    table.meta("b", opt.b);
    table.meta("dim", static_cast<long long>(setting.dim));
    table.meta("lambda", setting.lambda);
    table.meta("seed", static_cast<long long>(opt.seed));
    table.meta("points", static_cast<long long>(opt.points));
    table.meta("quad_nodes", static_cast<long long>(q.size()));
    table.columns = {"x", "f_true", "f_tilde", "oracle"};

    double acc_true = 0.0, acc_oracle = 0.0, acc_interior = 0.0;
    std::size_t interior = 0;
    for (const double x : linspace(opt.a, opt.b, opt.points)) {
      const double truth = fn(x);
      const double tilde = inverse_eval(F, enc, x);
      const double oracle = smooth_oracle(f, enc, x, q);
      table.rows.push_back({x, truth, tilde, oracle});
      acc_true += (tilde - truth) * (tilde - truth);
      acc_oracle += (tilde - oracle) * (tilde - oracle);
      if (x >= opt.a + setting.lambda && x <= opt.b - setting.lambda) {
        acc_interior += (tilde - truth) * (tilde - truth);
        ++interior;
      }
    }
    const double denom = static_cast<double>(opt.points);
    summary.rows.push_back(
        {sweep_lengths ? setting.lambda : static_cast<double>(setting.dim),
         std::sqrt(acc_true / denom), std::sqrt(acc_oracle / denom),
         std::sqrt(acc_interior / static_cast<double>(interior))});
    emit(table, opt.out + "_" + setting.label, opt.svg);
  }
  emit(summary, opt.out + "_summary", false);
}

void cmd_derivatives(const DerivativesOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  const double tau = opt.tau > 0.0 ? opt.tau : opt.lambda / 20.0;
  const double h = opt.h > 0.0 ? opt.h : opt.lambda / 5.0;
  const IntervalStepEncoder step(domain, opt.lambda, opt.component + 1,
                                 opt.seed);
  const SigmoidEncoder sigmoid(domain, opt.lambda, opt.component + 1, opt.seed,
                               tau, domain.a);

  CsvTable table;
  table.meta("command", std::string("derivatives"));
  table.meta("a", opt.a);
  table.meta("b", opt.b);
  table.meta("lambda", opt.lambda);
  table.meta("tau", tau);
  table.meta("h", h);
  table.meta("component", static_cast<long long>(opt.component));
  table.meta("seed", static_cast<long long>(opt.seed));
  table.meta("points", static_cast<long long>(opt.points));
  table.meta("rescaled", std::string(opt.rescale ? "true" : "false"));
  table.columns = {"x", "step_fd_d1", "step_fd_d2", "sigmoid_exact_d1",
                   "sigmoid_exact_d2"};

  const std::size_t s = opt.component;
  auto step_at = [&](double x) {
    double v;
    step.encode_span(x, s, s + 1, &v);
    return v;
  };
  std::vector<std::vector<double>> cols(4);
  const auto xs = linspace(opt.a + 2 * h, opt.b - 2 * h, opt.points);
  for (const double x : xs) {
    const double d1 = (step_at(x + h) - step_at(x - h)) / (2 * h);
    const double d2 =
        (step_at(x + h) - 2 * step_at(x) + step_at(x - h)) / (h * h);
    double s1, s2;
    sigmoid.derivative_span(x, 1, s, s + 1, &s1);
    sigmoid.derivative_span(x, 2, s, s + 1, &s2);
    cols[0].push_back(d1);
    cols[1].push_back(d2);
    cols[2].push_back(s1);
    cols[3].push_back(s2);
  }
  if (opt.rescale) {
    for (auto& col : cols) {
      double peak = 0.0;
      for (const double v : col) peak = std::max(peak, std::abs(v));
      if (peak > 0.0) {
        for (double& v : col) v /= peak;
      }
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    table.rows.push_back({xs[i], cols[0][i], cols[1][i], cols[2][i],
                          cols[3][i]});
  }
  emit(table, opt.out + "_derivatives", opt.svg);
}

void cmd_solve_ode(const SolveOdeOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  const double h = opt.h > 0.0 ? opt.h : opt.length / 5.0;

  std::vector<double> coeffs;
  std::vector<OdePreset::Bc> bcs;
  std::function<double(double)> analytic;
  if (opt.preset == "custom") {
    coeffs = parse_double_list(opt.coeffs, "coeffs");
    bcs = parse_bcs(opt.bcs);
  } else {
    const OdePreset preset = OdePreset::by_name(opt.preset, opt.k, opt.beta);
    coeffs = preset.coeffs;
    bcs = preset.bcs;
    analytic = preset.analytic;
  }

  const NormalizedEncoder enc = normalized_step(
      domain, opt.length, opt.dim, opt.seed, opt.grid, opt.iters);
  const auto colloc = linspace(opt.a, opt.b, opt.m);
  const RidgeProblem problem =
      ode_problem(enc, coeffs, [](double) { return 0.0; }, bcs, colloc,
                  DerivativeSpec::fd(1, h), opt.ridge);
  SolveInfo info;
  const HyperVector F = ridge_solve(problem, &info);

  CsvTable table;
  table.meta("command", std::string("solve-ode"));
  table.meta("preset", opt.preset);
  if (opt.preset == "custom") {
    table.meta("coeffs", opt.coeffs);
    table.meta("bc", opt.bcs);
  } else {
    table.meta("k", opt.k);
    if (opt.preset == "damped") table.meta("beta", opt.beta);
  }
  table.meta("a", opt.a);
  table.meta("b", opt.b);
  table.meta("dim", static_cast<long long>(opt.dim));
  table.meta("length", opt.length);
  table.meta("h", h);
  table.meta("m", static_cast<long long>(opt.m));
  table.meta("ridge", opt.ridge);
  table.meta("seed", static_cast<long long>(opt.seed));
  table.meta("eval_points", static_cast<long long>(opt.eval_points));
  table.meta("dual_residual_inf", info.residual_inf);
  table.meta("used_cg", std::string(info.used_cg ? "true" : "false"));

  if (analytic) {
    table.columns = {"x", "analytic", "hd_solution"};
  } else {
    table.columns = {"x", "hd_solution"};
  }
  for (const double x : linspace(opt.a, opt.b, opt.eval_points)) {
    const double v = inverse_eval(F, enc, x);
    if (analytic) {
      table.rows.push_back({x, analytic(x), v});
    } else {
      table.rows.push_back({x, v});
    }
  }
  emit(table, opt.out + "_ode", opt.svg);
}

void cmd_solve_fredholm(const SolveFredholmOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  std::function<double(double, double)> kernel;
  if (!opt.kernel_table.empty()) {
    kernel = load_kernel_table(opt.kernel_table);
  } else {
    kernel = kernel_by_name(opt.kernel_preset);
  }
  const auto b_fn = function_preset(opt.b_preset);
  const bool demo =
      opt.kernel_table.empty() && opt.kernel_preset == "yx" &&
      opt.b_preset == "twothirdsx" && opt.lambda_f == 1.0;

  const NormalizedEncoder phi = normalized_step(
      domain, opt.length_phi, opt.dim, opt.seed, opt.grid, opt.iters);
  const NormalizedEncoder psi = normalized_step(
      domain, opt.length_psi, opt.dim, opt.seed + 1, opt.grid, opt.iters);

  const double centering =
      zero_centering_stat(phi.base(), 256, opt.seed + 1000);
  if (centering > 4.0 / std::sqrt(static_cast<double>(opt.dim))) {
    std::fprintf(stderr,
                 "solve-fredholm: encoding is not well centered "
                 "(stat %.3g); the product reduction may be biased\n",
                 centering);
  }

  const ProductEncoder pe(phi, psi);
  const HyperVector K = forward2(kernel, pe, Quadrature::default_for(phi),
                                 Quadrature::default_for(psi));
  const RidgeProblem problem = fredholm_rows(
      pe, phi, K, opt.lambda_f, SampledFunction::from_function(b_fn),
      linspace(opt.a, opt.b, opt.m), opt.ridge);
  SolveInfo info;
  const HyperVector F = ridge_solve(problem, &info);

  CsvTable table;
  table.meta("command", std::string("solve-fredholm"));
  table.meta("kernel",
             opt.kernel_table.empty() ? opt.kernel_preset : opt.kernel_table);
  table.meta("b_preset", opt.b_preset);
  table.meta("lambda_f", opt.lambda_f);
  table.meta("a", opt.a);
  table.meta("b", opt.b);
  table.meta("dim", static_cast<long long>(opt.dim));
  table.meta("length_phi", opt.length_phi);
  table.meta("length_psi", opt.length_psi);
  table.meta("m", static_cast<long long>(opt.m));
  table.meta("ridge", opt.ridge);
  table.meta("seed", static_cast<long long>(opt.seed));
  table.meta("eval_points", static_cast<long long>(opt.eval_points));
  table.meta("dual_residual_inf", info.residual_inf);

  if (demo) {
    table.columns = {"x", "analytic", "hd_solution"};
  } else {
    table.columns = {"x", "hd_solution"};
  }
  for (const double x : linspace(opt.a, opt.b, opt.eval_points)) {
    const double v = inverse_eval(F, phi, x);
    if (demo) {
      table.rows.push_back({x, x, v});
    } else {
      table.rows.push_back({x, v});
    }
  }
  emit(table, opt.out + "_fredholm", opt.svg);
}

void cmd_fuzzy_baseline(const FuzzyBaselineOptions& opt) {
  const Domain1D domain{opt.a, opt.b};
  const auto fn = function_preset(opt.preset);
  const SampledFunction f = SampledFunction::from_function(fn);

  const NormalizedEncoder enc = normalized_step(
      domain, opt.length, opt.dim, opt.seed, opt.grid, opt.iters);
  const Quadrature q = Quadrature::default_for(enc);
  const HyperVector F = forward(f, enc, q);

  const FuzzyPartition partition{domain, opt.bases};
  const std::vector<double> G = fuzzy_transform(f, partition);

  CsvTable table;
  table.meta("command", std::string("fuzzy-baseline"));
  table.meta("preset", opt.preset);
  table.meta("a", opt.a);
  table.meta("b", opt.b);
  table.meta("bases", static_cast<long long>(opt.bases));
  table.meta("dim", static_cast<long long>(opt.dim));
  table.meta("length", opt.length);
  table.meta("seed", static_cast<long long>(opt.seed));
  table.meta("points", static_cast<long long>(opt.points));
  table.columns = {"x", "f_true", "f_tilde", "fuzzy_tilde"};
  for (const double x : linspace(opt.a, opt.b, opt.points)) {
    table.rows.push_back({x, fn(x), inverse_eval(F, enc, x),
                          fuzzy_inverse(G, partition, x)});
  }
  emit(table, opt.out + "_fuzzy", opt.svg);
}

}  // namespace hdtcli
