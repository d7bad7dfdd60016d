// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "leftmost/operators.hpp"

namespace leftmost {

/**
 * @brief Arnoldi factorization A V_m = V_{m+1} H with orthonormal V.
 *
 * hess_cols[j] holds column j of the (m+1) x m Hessenberg matrix, entries
 * 0..j+1. On an invariant subspace (happy breakdown) the factorization is
 * truncated: steps < m requested, no trailing basis vector is appended and
 * the last subdiagonal entry is the tiny norm that triggered the breakdown.
 */
struct ArnoldiFactorization {
  std::vector<DenseVector> basis;               // steps + 1 vectors (steps if invariant)
  std::vector<std::vector<Complex>> hess_cols;  // steps columns
  Index steps = 0;
  bool invariant = false;
};

// Modified Gram-Schmidt with one unconditional reorthogonalization pass.
// Breakdown threshold is 1e-14 times a running estimate of ||Op||.
// Throws std::invalid_argument on m < 1, dimension mismatch, or zero v0.
ArnoldiFactorization arnoldi(const LinearOperator& op, const DenseVector& v0,
                             Index m);

struct GmresOptions {
  double tol = 1e-8;       // target for ||b - Op x|| / ||b||
  Index restart = 50;      // Krylov vectors per cycle
  Index max_total = 20000;  // Krylov vectors across all cycles
};

enum class GmresStop { converged, max_total, stagnated };

struct GmresReport {
  DenseVector solution;
  // Recomputed from the returned solution, never the Givens recurrence value.
  double relative_residual = 0.0;
  Index inner_iterations = 0;  // Krylov vectors built, summed over cycles
  bool converged = false;
  GmresStop stop = GmresStop::max_total;
  // Relative residual estimates from the Givens recurrence, one per Krylov
  // step. Non-increasing within each restart cycle.
  std::vector<double> residual_estimates;
};

// Restarted GMRES. The least-squares subproblem is solved with Givens
// rotations. Stagnation (an exactly invariant subspace whose best solution
// is still above tolerance, or restart cycles that stop making progress)
// is reported through `stop`, never thrown.
GmresReport gmres(const LinearOperator& op, const DenseVector& b,
                  const DenseVector& x0, const GmresOptions& opts);

}  // namespace leftmost
