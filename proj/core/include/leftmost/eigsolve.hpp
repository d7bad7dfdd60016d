// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "leftmost/csr.hpp"

namespace leftmost {

// Thrown when a shifted system is singular beyond what a one-time
// perturbation of the shift can repair.
class SingularShiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ShiftPolicy { fixed, rayleigh_quotient, renew_on_slowdown };

struct SolverConfig {
  double inner_tol = 1e-3;    // epsilon_1, relative GMRES residual
  double outer_tol = 1e-10;   // epsilon_2, bound on ||A x - lambda x||
  Index max_outer = 25;
  Index gmres_restart = 50;
  Index gmres_max_total = 20000;
  ShiftPolicy shift_policy = ShiftPolicy::renew_on_slowdown;
  double slowdown_factor = 0.5;  // renew when ||t_k|| / ||t_{k-1}|| exceeds it
  std::uint64_t seed = 1;
};

struct EigResult {
  Complex lambda{};
  DenseVector vector;
  double residual_norm = 0.0;  // ||A x - lambda x||, recomputed explicitly
  Index outer_iterations = 0;
  Index inner_iterations_total = 0;  // Krylov vectors across all inner solves
  bool converged = false;
  double wall_time = 0.0;  // seconds
  std::vector<double> outer_residual_history;
};

struct RitzPair {
  Complex lambda{};
  DenseVector vector;
};

// Rayleigh-Ritz extraction on span{x_i, y}: orthonormalize, project to the
// 2x2 P = Q^H A Q, solve the 2x2 eigenproblem in closed form and keep the
// Ritz value closest to sigma (ties toward the smaller real part). Returns
// nullopt when y is numerically collinear with x_i (the span is
// one-dimensional); callers fall back to the plain power update.
// x_i must be a unit vector.
std::optional<RitzPair> ritz_2d(const CsrMatrix& a, const DenseVector& x_i,
                                const DenseVector& y, Complex sigma);

// Angle data for the perturbation bounds: x_i = alpha x + beta z with
// ||x_i|| = 1, and mu1 > mu2 > 0 the two largest eigenvalues of
// B = (A - sigma I)^{-1}.
struct ThetaAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

// Largest perturbation norm for which one inexact inverse-power step still
// contracts the angle to the target eigenvector:
//   (1 - 2 mu2/mu1) |beta alpha| / ((2 mu2/mu1) |alpha| + |beta|).
// Not clamped: a nonpositive value signals that no perturbation level is
// certified (mu1 <= 2 mu2). Throws std::domain_error unless mu1 > mu2 > 0
// and alpha^2 + beta^2 = 1 within 1e-12.
double epsilon_bound(const ThetaAngles& t);

// One-step contraction factor of tan(angle) under perturbations of norm eps:
//   (2 mu2/mu1) (|beta| + eps) / (|alpha| - eps) * (|alpha| / |beta|).
// Throws std::domain_error on eps >= |alpha| or beta == 0, and validates
// like epsilon_bound.
double convergence_rate_bound(const ThetaAngles& t, double eps);

struct LeftmostEstimate {
  Complex sigma0{};
  DenseVector x0;
  double residual = 0.0;  // ||(A - beta I) v - mu v|| at return
  bool converged = false;
  Index restarts = 0;
};

// Bootstrap for the leftmost eigenvalue: shift by beta = ||A||_F so the
// leftmost eigenvalue of A becomes the largest-magnitude eigenvalue of
// A - beta I, then run explicitly restarted Arnoldi (k_dim steps per cycle,
// restarting from the dominant Ritz vector) until the Ritz residual drops
// to tol * beta. Returns sigma0 = mu + beta and the Ritz vector.
LeftmostEstimate leftmost_estimate(const CsrMatrix& a, Index k_dim, double tol,
                                   Index max_restarts, std::uint64_t seed);

// Inverse power method with a fixed shift. Each inner system
// (A - sigma I) y = x_i is driven to relative residual 1e-14 with GMRES
// (restart min(n, 1000)), emulating an exact solve: stagnation at the
// double-precision floor (relative residual <= 1e-8) is accepted as
// converged-to-machine, stagnation above it raises SingularShiftError.
// lambda is the Rayleigh quotient x^H A x. A start vector whose Rayleigh
// pair already meets cfg.outer_tol returns immediately with zero outer
// iterations. Stops when ||A x - lambda x|| <= cfg.outer_tol; max_outer
// exhaustion returns converged = false, not an error.
EigResult exact_ipm(const CsrMatrix& a, Complex sigma, const DenseVector& x1,
                    const SolverConfig& cfg);

// Inexact inverse power method. Per outer iteration: GMRES-solve
// (A - sigma I) y = x_i to relative residual cfg.inner_tol, extract
// (lambda, x_{i+1}) with ritz_2d, stop when ||A x - lambda x|| <=
// cfg.outer_tol. Shift handling per cfg.shift_policy; renew_on_slowdown
// renews the shift when the residual ratio exceeds slowdown_factor.
// Renewals place sigma at lambda minus the current residual, never closer
// than eps ||A||_F / max(inner_tol, 1e-8), which keeps the next inner
// system solvable at working precision while preserving the superlinear
// tail. The starting shift gets the same treatment when it lies inside the
// start pair's residual ball (bootstrap handoffs often do), and a start
// pair already meeting cfg.outer_tol returns immediately.
// On GMRES stagnation above max(cfg.inner_tol, 1e-8) the shift is perturbed
// by 1e-8 (1 + |sigma|) once; a second stagnation raises SingularShiftError.
// max_outer exhaustion returns converged = false.
EigResult iipm(const CsrMatrix& a, Complex sigma, const DenseVector& x1,
               const SolverConfig& cfg);

}  // namespace leftmost
