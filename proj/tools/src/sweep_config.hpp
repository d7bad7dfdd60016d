// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "leftmost/sweep.hpp"

namespace leftmost::cli {

// Everything a sweep run needs, resolved against the model presets.
struct SweepRunConfig {
  ParamGrid grid;
  SolverConfig solver;
  SweepOptions options;
};

// Parses flat `key = value` text (# starts a comment line, blank lines are
// skipped). Defaults come from the model presets, so a config naming only
// the model and the axes is complete. On failure every offending key is
// reported, one message per entry in `errors`, and false is returned.
//
// Keys: model (abc | kuramoto, required), operator (dynamo | zero-form),
// grid_n, axis{1,2}_{name,start,step,count} (names and starts required),
// fixed_<param>, inner_tol, outer_tol, max_outer, gmres_restart,
// gmres_max_total, shift_policy (fixed | renew | rq), slowdown, seed,
// eigs_tol, eigs_dim, eigs_max_restarts, workers.
bool parse_sweep_config(std::istream& in, SweepRunConfig& out,
                        std::vector<std::string>& errors);

// Renders a config that parses back to exactly the same run: every key in a
// fixed order, reals at 17 significant digits, plus comment lines carrying
// the tool version and the planned point count. This is the run manifest.
std::string render_manifest(const SweepRunConfig& cfg);

std::string shift_policy_name(ShiftPolicy p);

}  // namespace leftmost::cli
