// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "util.hpp"

namespace cli = leftmost::cli;

int main(int argc, char** argv) {
  CLI::App app{"Sparse leftmost-eigenvalue toolkit"};
  app.set_version_flag("--version", std::string(LEFTMOST_VERSION));
  app.require_subcommand(1);

  int rc = cli::kOk;

  cli::SolveArgs solve;
  CLI::App* s = app.add_subcommand(
      "solve", "Compute the leftmost eigenpair of a Matrix Market file");
  s->add_option("matrix", solve.matrix_path, "Matrix Market coordinate file")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* sigma_opt = s->add_option(
      "--sigma", solve.sigma,
      "Starting shift; omit to bootstrap one from the matrix");
  s->add_option("--outer-tol", solve.outer_tol, "Bound on ||A x - lambda x||")
      ->capture_default_str();
  s->add_option("--inner-tol", solve.inner_tol, "Relative GMRES residual")
      ->capture_default_str();
  s->add_option("--max-outer", solve.max_outer, "Outer iteration cap")
      ->capture_default_str();
  s->add_option("--restart", solve.gmres_restart, "GMRES restart length")
      ->capture_default_str();
  s->add_option("--max-total", solve.gmres_max_total,
                "Krylov vector cap per inner solve")
      ->capture_default_str();
  s->add_option("--shift-policy", solve.shift_policy,
                "Shift handling: fixed, rq, or renew")
      ->check(CLI::IsMember({"fixed", "rq", "renew"}))
      ->capture_default_str();
  s->add_option("--slowdown", solve.slowdown,
                "Residual ratio that triggers a renewal under renew")
      ->capture_default_str();
  s->add_option("--seed", solve.seed, "Start vector seed")
      ->capture_default_str();
  s->callback([&] {
    solve.have_sigma = sigma_opt->count() > 0;
    rc = cli::cmd_solve(solve);
  });

  cli::SweepArgs sweep;
  CLI::App* w = app.add_subcommand(
      "sweep", "Run a parameter sweep described by a config file");
  w->add_option("config", sweep.config_path, "Sweep config (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  w->add_option("--out", sweep.out_dir, "Output directory")->required();
  w->add_flag("--force", sweep.force,
              "Write into a non-empty output directory");
  w->add_option("--parallel", sweep.parallel,
                "Worker threads; overrides the config")
      ->check(CLI::PositiveNumber);
  w->callback([&] { rc = cli::cmd_sweep(sweep); });

  cli::BuildArgs build;
  CLI::App* b = app.add_subcommand(
      "build", "Discretize a model operator and write it as Matrix Market");
  b->add_option("--model", build.model, "Flow model: abc or kuramoto")
      ->required()
      ->check(CLI::IsMember({"abc", "kuramoto"}));
  b->add_option("--grid-n", build.grid_n, "Grid sites per dimension")
      ->capture_default_str();
  b->add_option("--operator", build.op, "Operator: dynamo or zero-form")
      ->check(CLI::IsMember({"dynamo", "zero-form", "zero_form"}))
      ->capture_default_str();
  b->add_option("-o,--out", build.out_path, "Output file")->required();
  b->add_option("--param", build.params,
                "Flow parameter NAME=VALUE, repeatable (abc: A, B, C; "
                "kuramoto: K, omega_x, omega_y, omega_z; dynamo: R_m; "
                "zero-form: D or Theta)");
  b->callback([&] { rc = cli::cmd_build(build); });

  cli::ConvertArgs convert;
  CLI::App* c = app.add_subcommand(
      "convert", "Rewrite a Matrix Market file in canonical general form");
  c->add_option("input", convert.in_path, "Input file")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("output", convert.out_path, "Output file")->required();
  c->add_flag("--symmetrize", convert.symmetrize, "Write A + A^T instead");
  c->callback([&] { rc = cli::cmd_convert(convert); });

  cli::BenchArgs bench;
  CLI::App* n = app.add_subcommand(
      "bench", "Compare exact and inexact refinement on one matrix");
  n->add_option("matrix", bench.matrix_path, "Matrix Market coordinate file")
      ->required()
      ->check(CLI::ExistingFile);
  n->add_option("--out", bench.out_path, "Residual history CSV")->required();
  n->add_option("--mode", bench.mode, "Which methods to run")
      ->check(CLI::IsMember({"exact", "inexact", "both"}))
      ->capture_default_str();
  n->add_option("--outer-tol", bench.outer_tol, "Bound on ||A x - lambda x||")
      ->capture_default_str();
  n->add_option("--max-outer", bench.max_outer, "Outer iteration cap")
      ->capture_default_str();
  n->add_option("--seed", bench.seed, "Bootstrap seed")->capture_default_str();
  n->callback([&] { rc = cli::cmd_bench(bench); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kInputError;
  }
  return rc;
}
