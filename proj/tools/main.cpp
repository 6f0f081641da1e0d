#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>

#include "commands.hpp"
#include "hdt/config.hpp"
#include "hdt/errors.hpp"

// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 I/O failure.

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kIoError = 4;

std::string g_config_path;

void add_common(CLI::App* cmd, std::string& out, bool& svg) {
  cmd->add_option("--out", out, "output path prefix (required)");
  cmd->add_flag("--svg", svg, "also write minimal SVG line plots");
  cmd->add_option("--config", g_config_path,
                  "flat key=value file; keys are long option names; "
                  "command-line flags win");
}

// Feed file values into options the command line left untouched, then
// check the one option every command needs.
void finalize_options(CLI::App* cmd, const std::string& out) {
  if (!g_config_path.empty()) {
    for (const auto& [key, value] : hdt::parse_key_value_file(g_config_path)) {
      std::string name = "--" + key;
      std::replace(name.begin(), name.end(), '_', '-');
      CLI::Option* opt = cmd->get_option_no_throw(name);
      if (opt == nullptr || name == "--config") {
        throw hdt::ConfigError("config file: unknown key '" + key + "' for " +
                               cmd->get_name());
      }
      if (opt->count() == 0) {
        opt->add_result(value);
        opt->run_callback();
      }
    }
  }
  if (out.empty()) {
    throw hdt::ConfigError(cmd->get_name() +
                           ": --out is required (flag or config file)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperdimensional transform toolkit: encodings, transforms, "
               "and equation solving with CSV outputs"};
  app.require_subcommand(1);

  hdtcli::NormalizeOptions normalize;
  {
    CLI::App* cmd = app.add_subcommand(
        "normalize", "solve the kernel normalization and dump the iterates");
    cmd->add_option("--a", normalize.a, "domain left endpoint");
    cmd->add_option("--b", normalize.b, "domain right endpoint");
    cmd->add_option("--lambda", normalize.lambda, "length scale");
    cmd->add_flag("--periodic", normalize.periodic,
                  "periodic kernel (lambda = (b-a)/cells)");
    cmd->add_option("--cells", normalize.cells, "periodic cell count");
    cmd->add_option("--grid", normalize.grid, "normalization grid size");
    cmd->add_option("--iters", normalize.iters, "fixed iteration count");
    add_common(cmd, normalize.out, normalize.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, normalize.out);
      hdtcli::cmd_normalize(normalize);
    });
  }

  hdtcli::KernelsOptions kernels;
  {
    CLI::App* cmd = app.add_subcommand(
        "kernels", "dump raw and normalized kernel slices at fixed points");
    cmd->add_option("--a", kernels.a, "domain left endpoint");
    cmd->add_option("--b", kernels.b, "domain right endpoint");
    cmd->add_option("--lambda", kernels.lambda, "length scale");
    cmd->add_option("--slices", kernels.slices,
                    "slice positions (default: 5 even)")
        ->delimiter(',');
    cmd->add_option("--points", kernels.points, "evaluation grid size");
    cmd->add_option("--grid", kernels.grid, "normalization grid size");
    cmd->add_option("--iters", kernels.iters, "normalization iterations");
    add_common(cmd, kernels.out, kernels.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, kernels.out);
      hdtcli::cmd_kernels(kernels);
    });
  }

  hdtcli::RecoverOptions recover;
  {
    CLI::App* cmd = app.add_subcommand(
        "recover",
        "transform a preset function and compare its reconstruction");
    cmd->add_option("--preset", recover.preset, "function preset name");
    cmd->add_option("--a", recover.a, "domain left endpoint");
    cmd->add_option("--b", recover.b, "domain right endpoint");
    cmd->add_option("--lambda", recover.lambda,
                    "length scale for the dimension sweep");
    cmd->add_option("--dims", recover.dims, "dimension sweep")->delimiter(',');
    cmd->add_option("--lengths", recover.lengths,
                    "length-scale sweep (overrides --dims)")
        ->delimiter(',');
    cmd->add_option("--dim", recover.dim,
                    "dimension used by the length-scale sweep");
    cmd->add_option("--seed", recover.seed, "encoding seed");
    cmd->add_option("--points", recover.points, "evaluation grid size");
    cmd->add_option("--grid", recover.grid, "normalization grid size");
    cmd->add_option("--iters", recover.iters, "normalization iterations");
    add_common(cmd, recover.out, recover.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, recover.out);
      hdtcli::cmd_recover(recover);
    });
  }

  hdtcli::DerivativesOptions derivatives;
  {
    CLI::App* cmd = app.add_subcommand(
        "derivatives",
        "derivatives of one encoding component: step FD vs sigmoid exact");
    cmd->add_option("--a", derivatives.a, "domain left endpoint");
    cmd->add_option("--b", derivatives.b, "domain right endpoint");
    cmd->add_option("--lambda", derivatives.lambda, "length scale");
    cmd->add_option("--tau", derivatives.tau,
                    "sigmoid sharpness (default lambda/20)");
    cmd->add_option("--fd-step", derivatives.h,
                    "finite-difference step (default lambda/5)");
    cmd->add_option("--component", derivatives.component, "component index");
    cmd->add_option("--points", derivatives.points, "evaluation grid size");
    cmd->add_option("--seed", derivatives.seed, "encoding seed");
    cmd->add_flag("--rescale,!--no-rescale", derivatives.rescale,
                  "rescale each column to peak 1");
    add_common(cmd, derivatives.out, derivatives.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, derivatives.out);
      hdtcli::cmd_derivatives(derivatives);
    });
  }

  hdtcli::SolveOdeOptions ode;
  {
    CLI::App* cmd = app.add_subcommand(
        "solve-ode", "solve a linear constant-coefficient equation by "
                     "collocation ridge regression");
    cmd->add_option("--preset", ode.preset,
                    "decay | harmonic | damped | custom");
    cmd->add_option("--k", ode.k, "preset stiffness");
    cmd->add_option("--beta", ode.beta, "damped preset damping");
    cmd->add_option("--coeffs", ode.coeffs, "custom: a0,a1,...");
    cmd->add_option("--bc", ode.bcs, "custom: x:order:value;...");
    cmd->add_option("--a", ode.a, "domain left endpoint");
    cmd->add_option("--b", ode.b, "domain right endpoint");
    cmd->add_option("--dim", ode.dim, "dimensionality");
    cmd->add_option("--length", ode.length, "length scale");
    cmd->add_option("--fd-step", ode.h, "finite-difference step (default l/5)");
    cmd->add_option("--m", ode.m, "collocation point count");
    cmd->add_option("--ridge", ode.ridge, "ridge parameter");
    cmd->add_option("--seed", ode.seed, "encoding seed");
    cmd->add_option("--grid", ode.grid, "normalization grid size");
    cmd->add_option("--iters", ode.iters, "normalization iterations");
    cmd->add_option("--eval-points", ode.eval_points, "evaluation grid size");
    add_common(cmd, ode.out, ode.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, ode.out);
      hdtcli::cmd_solve_ode(ode);
    });
  }

  hdtcli::SolveFredholmOptions fredholm;
  {
    CLI::App* cmd = app.add_subcommand(
        "solve-fredholm",
        "solve a second-kind integral equation via the bivariate transform");
    cmd->add_option("--kernel-preset", fredholm.kernel_preset, "yx | zero");
    cmd->add_option("--kernel-table", fredholm.kernel_table,
                    "CSV table k(y,x): first row x grid, first column y grid");
    cmd->add_option("--b-preset", fredholm.b_preset,
                    "right-hand-side preset name");
    cmd->add_option("--lambda-f", fredholm.lambda_f,
                    "integral term coefficient");
    cmd->add_option("--a", fredholm.a, "domain left endpoint");
    cmd->add_option("--b", fredholm.b, "domain right endpoint");
    cmd->add_option("--dim", fredholm.dim, "dimensionality");
    cmd->add_option("--length-phi", fredholm.length_phi,
                    "length scale of the integration axis");
    cmd->add_option("--length-psi", fredholm.length_psi,
                    "length scale of the conditioning axis");
    cmd->add_option("--m", fredholm.m, "collocation point count");
    cmd->add_option("--ridge", fredholm.ridge, "ridge parameter");
    cmd->add_option("--seed", fredholm.seed, "encoding seed");
    cmd->add_option("--grid", fredholm.grid, "normalization grid size");
    cmd->add_option("--iters", fredholm.iters, "normalization iterations");
    cmd->add_option("--eval-points", fredholm.eval_points,
                    "evaluation grid size");
    add_common(cmd, fredholm.out, fredholm.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, fredholm.out);
      hdtcli::cmd_solve_fredholm(fredholm);
    });
  }

  hdtcli::FuzzyBaselineOptions fuzzy;
  {
    CLI::App* cmd = app.add_subcommand(
        "fuzzy-baseline",
        "triangular-partition baseline next to the transform recovery");
    cmd->add_option("--preset", fuzzy.preset, "function preset name");
    cmd->add_option("--a", fuzzy.a, "domain left endpoint");
    cmd->add_option("--b", fuzzy.b, "domain right endpoint");
    cmd->add_option("--bases", fuzzy.bases, "number of basis functions");
    cmd->add_option("--dim", fuzzy.dim, "dimensionality");
    cmd->add_option("--length", fuzzy.length, "length scale");
    cmd->add_option("--seed", fuzzy.seed, "encoding seed");
    cmd->add_option("--points", fuzzy.points, "evaluation grid size");
    cmd->add_option("--grid", fuzzy.grid, "normalization grid size");
    cmd->add_option("--iters", fuzzy.iters, "normalization iterations");
    add_common(cmd, fuzzy.out, fuzzy.svg);
    cmd->callback([&, cmd] {
      finalize_options(cmd, fuzzy.out);
      hdtcli::cmd_fuzzy_baseline(fuzzy);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  } catch (const hdt::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalError;
  } catch (const hdt::IoError& e) {
    std::fprintf(stderr, "i/o failure: %s\n", e.what());
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kOk;
}
