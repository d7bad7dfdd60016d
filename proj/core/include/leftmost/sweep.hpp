// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "leftmost/eigsolve.hpp"
#include "leftmost/seo.hpp"

namespace leftmost {

struct ParamAxis {
  std::string name;
  double start = 0.0;
  double step = 0.0;  // zero step allowed only for a single-point axis
  Index count = 1;
};

enum class SweepModel { abc, kuramoto };

/**
 * @brief Rectangular parameter grid for a model/operator pair.
 *
 * Axis values override fixed_params entries of the same name, so a grid can
 * sweep any two knobs and pin the rest. Dynamo sweeps read the magnetic
 * Reynolds number "R_m"; zero-form sweeps read the noise intensity "D"
 * (alias "Theta").
 */
struct ParamGrid {
  SweepModel model = SweepModel::abc;
  ParamAxis axis1;
  ParamAxis axis2;
  std::map<std::string, double> fixed_params;
  Index grid_n = 16;
  SeoOperator op = SeoOperator::dynamo;
};

enum class SignClass { nonpositive, positive };

struct SweepRecord {
  double param1 = 0.0;
  double param2 = 0.0;
  Complex lambda{0.0, 0.0};
  SignClass sign_class = SignClass::positive;
  Index outer = 0;
  Index inner = 0;
  double eigs_time = 0.0;   // bootstrap stage, seconds
  double gmres_time = 0.0;  // refinement stage, seconds
  double entire_time = 0.0;
  bool converged = false;
  double residual = 0.0;  // ||A x - lambda x||, recomputed from scratch
};

struct StatsSummary {
  double average = 0.0;
  double maximum = 0.0;
  double minimum = 0.0;
  double median = 0.0;
  double total = 0.0;
};

struct SweepOptions {
  double eigs_tol = 1e-4;  // bootstrap residual vs ||A||_F
  // Krylov vectors per bootstrap restart. Kept generous: with a small basis
  // the restarted iteration can settle on a subdominant Ritz pair and start
  // the refinement from the wrong spectral branch.
  Index eigs_dim = 120;
  Index eigs_max_restarts = 500;
  int workers = 1;  // >1 shards points across threads, same output order
};

// Tolerance presets: outer 1e-10 / inner 1e-3 with bootstrap 1e-4 for the
// dynamo runs, outer 1e-11 / inner 1e-4 with bootstrap 1e-5 for the
// Kuramoto runs. max_outer 25 in both.
SolverConfig default_sweep_config(SweepModel model);
SweepOptions default_sweep_options(SweepModel model);

// Resolves one grid point to a buildable matrix description; throws
// std::invalid_argument on missing or out-of-range parameters.
SeoMatrixSpec sweep_point_spec(const ParamGrid& grid, double v1, double v2);

// Runs every grid point: build the matrix, bootstrap an eigenpair estimate,
// refine with the inexact iteration, time both stages. Failed points are
// recorded with converged = false; the sweep itself never aborts once the
// grid has validated. Output is axis1-major and has exactly
// axis1.count * axis2.count records.
std::vector<SweepRecord> run_sweep(const ParamGrid& grid,
                                   const SolverConfig& cfg,
                                   const SweepOptions& opts);
std::vector<SweepRecord> run_sweep(const ParamGrid& grid,
                                   const SolverConfig& cfg);

SignClass classify_sign(Complex lambda);
std::string sign_to_string(SignClass s);

StatsSummary stats_summary(const std::vector<double>& values);

// Header: param1,param2,re_lambda,im_lambda,sign,outer,inner,eigs_time,
// gmres_time,entire_time,converged. Reals carry 17 significant digits.
void export_contour_csv(const std::vector<SweepRecord>& records,
                        std::ostream& out);

// Two aligned tables, iteration counts and stage times, one summary row per
// metric with Average/Maximum/Minimum/Median/Total columns.
std::string format_stats_tables(const std::vector<SweepRecord>& records);
void export_stats_csv(const std::vector<SweepRecord>& records,
                      std::ostream& out);

}  // namespace leftmost
