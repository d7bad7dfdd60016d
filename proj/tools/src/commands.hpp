// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leftmost/csr.hpp"

namespace leftmost::cli {

// One function per subcommand. Each returns a process exit code (ExitCode in
// util.hpp) and writes results to stdout, diagnostics to stderr.

struct SolveArgs {
  std::string matrix_path;
  bool have_sigma = false;  // without it the shift comes from a bootstrap run
  double sigma = 0.0;
  double outer_tol = 1e-10;
  double inner_tol = 1e-3;
  Index max_outer = 25;
  Index gmres_restart = 50;
  Index gmres_max_total = 20000;
  std::string shift_policy = "renew";  // fixed | rq | renew
  double slowdown = 0.5;
  std::uint64_t seed = 1;
};
int cmd_solve(const SolveArgs& args);

struct SweepArgs {
  std::string config_path;
  std::string out_dir;
  bool force = false;
  int parallel = 0;  // 0 keeps the config's worker count
};
int cmd_sweep(const SweepArgs& args);

struct BuildArgs {
  std::string model;  // abc | kuramoto
  std::string op = "dynamo";
  Index grid_n = 16;
  std::string out_path;
  std::vector<std::string> params;  // NAME=VALUE overrides
};
int cmd_build(const BuildArgs& args);

struct ConvertArgs {
  std::string in_path;
  std::string out_path;
  bool symmetrize = false;
};
int cmd_convert(const ConvertArgs& args);

struct BenchArgs {
  std::string matrix_path;
  std::string out_path;
  std::string mode = "both";  // exact | inexact | both
  double outer_tol = 1e-10;
  Index max_outer = 50;
  std::uint64_t seed = 1;
};
int cmd_bench(const BenchArgs& args);

}  // namespace leftmost::cli
