// SPDX-License-Identifier: Apache-2.0

#include "leftmost/eigsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "leftmost/krylov.hpp"

namespace leftmost {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_square(const CsrMatrix& a, const char* who) {
  if (a.n_rows != a.n_cols) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

DenseVector unit_copy(const DenseVector& v, const char* who) {
  DenseVector x = v;
  if (normalize(x) == 0.0) {
    throw std::invalid_argument(std::string(who) + ": start vector is zero");
  }
  return x;
}

void validate_angles(const ThetaAngles& t, const char* who) {
  if (!(t.mu1 > 0.0)) {
    throw std::domain_error(std::string(who) + ": mu1 must be positive");
  }
  if (!(t.mu1 > t.mu2) || !(t.mu2 > 0.0)) {
    throw std::domain_error(std::string(who) + ": need mu1 > mu2 > 0");
  }
  if (std::abs(t.alpha * t.alpha + t.beta * t.beta - 1.0) > 1e-12) {
    throw std::domain_error(std::string(who) +
                            ": alpha^2 + beta^2 must equal 1");
  }
}

std::string shift_string(Complex sigma) {
  return "(" + std::to_string(sigma.real()) + ", " +
         std::to_string(sigma.imag()) + ")";
}

// Relative residual below this is treated as the double-precision floor of
// the inner solve: Arnoldi recurrences on a shifted system cannot certify
// much beyond sqrt(eps) * kappa, so stagnation below the floor is precision
// exhaustion with a perfectly usable solution. Stagnation above it means the
// shift is singular.
constexpr double kMachineFloor = 1e-8;

// Rayleigh quotient and residual of a unit vector; the cheapest certificate
// that an iterate is already an eigenpair.
struct StartPair {
  Complex rq;
  double resid = 0.0;
};

StartPair start_pair(const CsrMatrix& a, const DenseVector& x) {
  DenseVector ax = matvec(a, x);
  const Complex rq = dot(x, ax);
  axpy(-rq, x, ax);
  return {rq, norm2(ax)};
}

}  // namespace

std::optional<RitzPair> ritz_2d(const CsrMatrix& a, const DenseVector& x_i,
                                const DenseVector& y, Complex sigma) {
  require_square(a, "ritz_2d");
  if (static_cast<Index>(x_i.size()) != a.n_rows ||
      static_cast<Index>(y.size()) != a.n_rows) {
    throw std::invalid_argument("ritz_2d: vector length mismatch");
  }
  if (std::abs(norm2(x_i) - 1.0) > 1e-12) {
    throw std::invalid_argument("ritz_2d: x_i must be a unit vector");
  }

  const double ynorm = norm2(y);
  if (ynorm == 0.0) {
    return std::nullopt;
  }

  const DenseVector& q1 = x_i;
  DenseVector w = y;
  axpy(-dot(q1, w), q1, w);
  axpy(-dot(q1, w), q1, w);  // second pass, w must be orthogonal to q1
  const double wnorm = norm2(w);
  if (wnorm <= 1e-14 * ynorm) {
    return std::nullopt;  // span{x_i, y} is numerically one-dimensional
  }
  scale(Complex{1.0 / wnorm, 0.0}, w);
  const DenseVector& q2 = w;

  const DenseVector aq1 = matvec(a, q1);
  const DenseVector aq2 = matvec(a, q2);
  const Complex p00 = dot(q1, aq1);
  const Complex p01 = dot(q1, aq2);
  const Complex p10 = dot(q2, aq1);
  const Complex p11 = dot(q2, aq2);

  // Closed-form eigenpairs of the 2x2 projection.
  const Complex tr = p00 + p11;
  const Complex det = p00 * p11 - p01 * p10;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);

  const double d1 = std::abs(l1 - sigma);
  const double d2 = std::abs(l2 - sigma);
  Complex lambda;
  if (std::abs(d1 - d2) <= 1e-15 * (d1 + d2)) {
    // Tie: smaller real part, then smaller imaginary part.
    if (l1.real() != l2.real()) {
      lambda = l1.real() < l2.real() ? l1 : l2;
    } else {
      lambda = l1.imag() <= l2.imag() ? l1 : l2;
    }
  } else {
    lambda = d1 < d2 ? l1 : l2;
  }

  // Eigenvector of the 2x2: rows of (P - lambda I) give two candidates;
  // keep the better conditioned one.
  const Complex va0 = p01;
  const Complex va1 = lambda - p00;
  const Complex vb0 = lambda - p11;
  const Complex vb1 = p10;
  const double na = std::abs(va0) * std::abs(va0) + std::abs(va1) * std::abs(va1);
  const double nb = std::abs(vb0) * std::abs(vb0) + std::abs(vb1) * std::abs(vb1);
  const double pscale = std::max({std::abs(p00), std::abs(p01), std::abs(p10),
                                  std::abs(p11), 1e-300});
  if (std::max(na, nb) <= (1e-15 * pscale) * (1e-15 * pscale)) {
    return std::nullopt;  // P is (numerically) a multiple of the identity
  }
  const Complex v0 = na >= nb ? va0 : vb0;
  const Complex v1 = na >= nb ? va1 : vb1;

  RitzPair out;
  out.lambda = lambda;
  out.vector.assign(q1.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < q1.size(); ++i) {
    out.vector[i] = v0 * q1[i] + v1 * q2[i];
  }
  if (normalize(out.vector) == 0.0) {
    return std::nullopt;
  }
  return out;
}

double epsilon_bound(const ThetaAngles& t) {
  validate_angles(t, "epsilon_bound");
  const double r = 2.0 * t.mu2 / t.mu1;
  const double a = std::abs(t.alpha);
  const double b = std::abs(t.beta);
  // Can be nonpositive when mu1 <= 2 mu2; returned unclamped so callers see
  // that no perturbation level is certified.
  return (1.0 - r) * (b * a) / (r * a + b);
}

double convergence_rate_bound(const ThetaAngles& t, double eps) {
  validate_angles(t, "convergence_rate_bound");
  if (eps < 0.0) {
    throw std::domain_error("convergence_rate_bound: eps must be nonnegative");
  }
  const double a = std::abs(t.alpha);
  const double b = std::abs(t.beta);
  if (eps >= a) {
    throw std::domain_error("convergence_rate_bound: eps must be below |alpha|");
  }
  if (b == 0.0) {
    throw std::domain_error("convergence_rate_bound: beta must be nonzero");
  }
  const double r = 2.0 * t.mu2 / t.mu1;
  return r * (b + eps) / (a - eps) * (a / b);
}

LeftmostEstimate leftmost_estimate(const CsrMatrix& a, Index k_dim, double tol,
                                   Index max_restarts, std::uint64_t seed) {
  require_square(a, "leftmost_estimate");
  if (k_dim < 1 || max_restarts < 1 || tol <= 0.0) {
    throw std::invalid_argument("leftmost_estimate: bad options");
  }

  const double beta = frobenius_norm(a);
  const ShiftedOperator op(a, Complex{beta, 0.0});
  const Index m = std::min(k_dim, a.n_rows);

  LeftmostEstimate best;
  best.residual = std::numeric_limits<double>::infinity();

  // Near-degenerate dominant clusters make the top Ritz value swing between
  // modes during early cycles; accepting a small residual alone can lock
  // onto a subdominant pair that happened to converge first. Acceptance
  // therefore also requires the top Ritz value to have settled.
  Complex prev_mu{0.0, 0.0};
  bool have_prev = false;

  DenseVector v = seeded_unit_vector(a.n_rows, seed);
  for (Index cycle = 0; cycle < max_restarts; ++cycle) {
    const ArnoldiFactorization f = arnoldi(op, v, m);
    const Index s = f.steps;

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(s, s);
    for (Index j = 0; j < s; ++j) {
      const Index rows = std::min(j + 2, s);
      for (Index i = 0; i < rows; ++i) {
        h(i, j) = f.hess_cols[static_cast<std::size_t>(j)]
                             [static_cast<std::size_t>(i)];
      }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) {
      break;  // keep the best estimate seen so far
    }

    // Dominant Ritz value; deterministic tie-break on (|mu|, Re, Im).
    Index pick = 0;
    for (Index k = 1; k < s; ++k) {
      const Complex cand = es.eigenvalues()(k);
      const Complex cur = es.eigenvalues()(pick);
      const double ac = std::abs(cand);
      const double au = std::abs(cur);
      if (ac > au ||
          (ac == au && (cand.real() > cur.real() ||
                        (cand.real() == cur.real() &&
                         cand.imag() > cur.imag())))) {
        pick = k;
      }
    }
    const Complex mu = es.eigenvalues()(pick);

    DenseVector ritz(static_cast<std::size_t>(a.n_rows), Complex{0.0, 0.0});
    for (Index j = 0; j < s; ++j) {
      axpy(es.eigenvectors()(j, pick), f.basis[static_cast<std::size_t>(j)],
           ritz);
    }
    if (normalize(ritz) == 0.0) {
      break;
    }

    DenseVector r = op.apply(ritz);
    axpy(-mu, ritz, r);
    const double resid = norm2(r);

    if (resid < best.residual) {
      best.sigma0 = mu + beta;
      best.x0 = ritz;
      best.residual = resid;
      best.restarts = cycle + 1;
    }
    const bool settled =
        f.invariant || s == a.n_rows ||
        (have_prev && std::abs(mu - prev_mu) <= 1e-3 * std::abs(mu));
    if (resid <= tol * beta && settled) {
      best.converged = true;
      return best;
    }
    prev_mu = mu;
    have_prev = true;
    v = std::move(ritz);
  }
  return best;
}

EigResult exact_ipm(const CsrMatrix& a, Complex sigma, const DenseVector& x1,
                    const SolverConfig& cfg) {
  require_square(a, "exact_ipm");
  const auto t0 = Clock::now();

  EigResult res;
  DenseVector x = unit_copy(x1, "exact_ipm");
  const DenseVector zeros(x.size(), Complex{0.0, 0.0});

  // A start pair can arrive already converged (the bootstrap frequently
  // overshoots its own tolerance). Iterating on it would solve a numerically
  // singular system for no benefit, so settle it up front.
  const StartPair s0 = start_pair(a, x);
  if (s0.resid <= cfg.outer_tol) {
    res.lambda = s0.rq;
    res.vector = x;
    res.residual_norm = s0.resid;
    res.converged = true;
    res.wall_time = seconds_since(t0);
    return res;
  }

  GmresOptions gopts;
  gopts.tol = 1e-14;
  gopts.restart = std::min<Index>(a.n_rows, 1000);
  gopts.max_total = cfg.gmres_max_total;

  const ShiftedOperator op(a, sigma);
  for (Index k = 0; k < cfg.max_outer; ++k) {
    const GmresReport rep = gmres(op, x, zeros, gopts);
    res.inner_iterations_total += rep.inner_iterations;
    if (rep.stop == GmresStop::stagnated &&
        rep.relative_residual > kMachineFloor) {
      throw SingularShiftError(
          "exact_ipm: shifted system singular at sigma = " +
          shift_string(sigma) + " (GMRES stagnated at relative residual " +
          std::to_string(rep.relative_residual) + ")");
    }

    x = rep.solution;
    if (normalize(x) == 0.0) {
      throw SingularShiftError("exact_ipm: inner solve returned zero at sigma = " +
                               shift_string(sigma));
    }

    DenseVector ax = matvec(a, x);
    const Complex lambda = dot(x, ax);
    axpy(-lambda, x, ax);
    const double t = norm2(ax);

    res.outer_iterations = k + 1;
    res.outer_residual_history.push_back(t);
    res.lambda = lambda;
    res.vector = x;
    res.residual_norm = t;
    if (t <= cfg.outer_tol) {
      res.converged = true;
      break;
    }
  }
  res.wall_time = seconds_since(t0);
  return res;
}

EigResult iipm(const CsrMatrix& a, Complex sigma, const DenseVector& x1,
               const SolverConfig& cfg) {
  require_square(a, "iipm");
  const auto t0 = Clock::now();

  EigResult res;
  DenseVector x = unit_copy(x1, "iipm");
  const DenseVector zeros(x.size(), Complex{0.0, 0.0});

  const StartPair s0 = start_pair(a, x);
  if (s0.resid <= cfg.outer_tol) {
    res.lambda = s0.rq;
    res.vector = x;
    res.residual_norm = s0.resid;
    res.converged = true;
    res.wall_time = seconds_since(t0);
    return res;
  }

  GmresOptions gopts;
  gopts.tol = cfg.inner_tol;
  gopts.restart = cfg.gmres_restart;
  gopts.max_total = cfg.gmres_max_total;

  // Shifts are never placed closer to an eigenvalue estimate than this:
  // a solve at distance d delivers relative residual ~ eps ||A|| / d at
  // best, so d must stay large enough for that to fit inside the accepted
  // band max(inner_tol, machine floor). Loose tolerances may therefore
  // approach much closer than near-exact ones.
  const double fro = frobenius_norm(a);
  const double eps = std::numeric_limits<double>::epsilon();
  const double shift_floor = eps * fro / std::max(cfg.inner_tol, kMachineFloor);

  Complex shift = sigma;
  // A shift inside the start pair's residual ball is indistinguishable from
  // an eigenvalue at the accuracy we hold, and the first inner systems are
  // then nearly singular. Back such a shift off by the residual, exactly as
  // renewals do below. The norm guard keeps deliberate interior shifts
  // untouched; a generic start vector has a residual of order the matrix
  // norm, not far below it.
  if (std::abs(sigma - s0.rq) < s0.resid && s0.resid <= 1e-2 * fro) {
    shift = s0.rq - Complex{std::max(s0.resid, shift_floor), 0.0};
  }
  bool perturbed = false;
  double t_prev = -1.0;

  Index completed = 0;
  while (completed < cfg.max_outer) {
    const ShiftedOperator op(a, shift);
    const GmresReport rep = gmres(op, x, zeros, gopts);
    res.inner_iterations_total += rep.inner_iterations;

    if (rep.stop == GmresStop::stagnated &&
        rep.relative_residual > std::max(cfg.inner_tol, kMachineFloor)) {
      // Singular effective shift. Nudge once, then give up. Tolerances below
      // the machine floor are exempt: stagnating just above such a request
      // is precision exhaustion, and the solution is fully usable.
      if (!perturbed) {
        perturbed = true;
        shift += 1e-8 * (1.0 + std::abs(shift));
        continue;
      }
      throw SingularShiftError(
          "iipm: shifted system singular at sigma = " + shift_string(shift) +
          " after perturbation (GMRES stagnated at relative residual " +
          std::to_string(rep.relative_residual) + ")");
    }

    Complex lambda;
    DenseVector xn;
    const std::optional<RitzPair> pair = ritz_2d(a, x, rep.solution, shift);
    if (pair) {
      lambda = pair->lambda;
      xn = std::move(pair->vector);
    } else {
      // Degenerate span: fall back to the plain inverse-power update.
      xn = rep.solution;
      if (normalize(xn) == 0.0) {
        throw SingularShiftError("iipm: inner solve returned zero at sigma = " +
                                 shift_string(shift));
      }
      lambda = dot(xn, matvec(a, xn));
    }

    DenseVector r = matvec(a, xn);
    axpy(-lambda, xn, r);
    const double t = norm2(r);

    ++completed;
    res.outer_iterations = completed;
    res.outer_residual_history.push_back(t);
    res.lambda = lambda;
    res.vector = xn;
    res.residual_norm = t;
    x = std::move(xn);

    if (t <= cfg.outer_tol) {
      res.converged = true;
      break;
    }

    // Renewed shifts back off from lambda by the current residual (never
    // past the floor): the eigenvalue lies within t of lambda, so the
    // offset keeps the next system solvably nonsingular at no asymptotic
    // cost (the contraction factor stays ~ t / gap). Renewing to lambda
    // exactly would hand GMRES a numerically singular matrix right when
    // the iteration is winning.
    const double backoff = std::max(t, shift_floor);
    switch (cfg.shift_policy) {
      case ShiftPolicy::fixed:
        break;
      case ShiftPolicy::rayleigh_quotient:
        shift = lambda - Complex{backoff, 0.0};
        break;
      case ShiftPolicy::renew_on_slowdown:
        if (t_prev > 0.0 && t / t_prev > cfg.slowdown_factor) {
          shift = lambda - Complex{backoff, 0.0};
        }
        break;
    }
    t_prev = t;
  }
  res.wall_time = seconds_since(t0);
  return res;
}

}  // namespace leftmost
