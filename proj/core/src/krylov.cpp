// SPDX-License-Identifier: Apache-2.0

#include "leftmost/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leftmost {

namespace {

// MGS with a second pass for stability; h gains the corrections.
void orthogonalize(const std::vector<DenseVector>& basis, Index count,
                   DenseVector& w, std::vector<Complex>& h) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index i = 0; i < count; ++i) {
      const Complex c = dot(basis[static_cast<std::size_t>(i)], w);
      axpy(-c, basis[static_cast<std::size_t>(i)], w);
      h[static_cast<std::size_t>(i)] += c;
    }
  }
}

struct Givens {
  double c = 1.0;   // real by construction
  Complex s{0.0, 0.0};
};

// Rotation zeroing the second component of (a, b) with b real, b >= 0.
Givens make_givens(Complex a, double b) {
  Givens g;
  const double aa = std::abs(a);
  const double t = std::sqrt(aa * aa + b * b);
  if (t == 0.0) {
    return g;  // identity
  }
  if (aa == 0.0) {
    g.c = 0.0;
    g.s = Complex{1.0, 0.0};
  } else {
    g.c = aa / t;
    g.s = (a / aa) * (b / t);
  }
  return g;
}

void apply_givens(const Givens& g, Complex& top, Complex& bot) {
  const Complex t = g.c * top + g.s * bot;
  bot = -std::conj(g.s) * top + g.c * bot;
  top = t;
}

}  // namespace

ArnoldiFactorization arnoldi(const LinearOperator& op, const DenseVector& v0,
                             Index m) {
  if (m < 1) {
    throw std::invalid_argument("arnoldi: m must be at least 1");
  }
  if (static_cast<Index>(v0.size()) != op.dim()) {
    throw std::invalid_argument("arnoldi: v0 length does not match operator");
  }
  DenseVector v = v0;
  if (normalize(v) == 0.0) {
    throw std::invalid_argument("arnoldi: v0 must be nonzero");
  }

  ArnoldiFactorization f;
  f.basis.push_back(std::move(v));
  double op_norm_est = 0.0;

  for (Index j = 0; j < m; ++j) {
    DenseVector w = op.apply(f.basis[static_cast<std::size_t>(j)]);
    op_norm_est = std::max(op_norm_est, norm2(w));

    std::vector<Complex> h(static_cast<std::size_t>(j) + 2, Complex{0.0, 0.0});
    orthogonalize(f.basis, j + 1, w, h);
    const double hnext = norm2(w);
    h[static_cast<std::size_t>(j) + 1] = Complex{hnext, 0.0};
    f.hess_cols.push_back(std::move(h));
    f.steps = j + 1;

    if (hnext <= 1e-14 * op_norm_est) {
      f.invariant = true;
      return f;
    }
    scale(Complex{1.0 / hnext, 0.0}, w);
    f.basis.push_back(std::move(w));
  }
  return f;
}

GmresReport gmres(const LinearOperator& op, const DenseVector& b,
                  const DenseVector& x0, const GmresOptions& opts) {
  const Index n = op.dim();
  if (static_cast<Index>(b.size()) != n ||
      static_cast<Index>(x0.size()) != n) {
    throw std::invalid_argument("gmres: vector length does not match operator");
  }
  if (opts.tol <= 0.0 || opts.restart < 1 || opts.max_total < 1) {
    throw std::invalid_argument("gmres: bad options");
  }

  GmresReport rep;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.solution.assign(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    rep.relative_residual = 0.0;
    rep.converged = true;
    rep.stop = GmresStop::converged;
    return rep;
  }

  DenseVector x = x0;
  double op_norm_est = 0.0;
  double prev_cycle_residual = 0.0;
  bool have_prev_cycle = false;
  int stalled_cycles = 0;
  bool breakdown_pending = false;

  std::vector<DenseVector> basis;
  std::vector<std::vector<Complex>> hcols;
  std::vector<Givens> rots;
  std::vector<Complex> g;

  while (true) {
    DenseVector r = op.apply(x);
    for (Index i = 0; i < n; ++i) {
      r[static_cast<std::size_t>(i)] =
          b[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)];
    }
    const double rnorm = norm2(r);
    rep.relative_residual = rnorm / bnorm;

    if (rep.relative_residual <= opts.tol) {
      rep.converged = true;
      rep.stop = GmresStop::converged;
      break;
    }
    if (breakdown_pending) {
      // The Krylov space became exactly invariant and its best solution is
      // still above tolerance: the operator is singular on this space.
      rep.stop = GmresStop::stagnated;
      break;
    }
    if (rep.inner_iterations >= opts.max_total) {
      rep.stop = GmresStop::max_total;
      break;
    }
    if (have_prev_cycle) {
      if (rnorm >= prev_cycle_residual * (1.0 - 1e-9)) {
        if (++stalled_cycles >= 2) {
          rep.stop = GmresStop::stagnated;
          break;
        }
      } else {
        stalled_cycles = 0;
      }
    }
    prev_cycle_residual = rnorm;
    have_prev_cycle = true;

    // One restart cycle.
    basis.clear();
    hcols.clear();
    rots.clear();
    scale(Complex{1.0 / rnorm, 0.0}, r);
    basis.push_back(std::move(r));
    g.assign(static_cast<std::size_t>(opts.restart) + 1, Complex{0.0, 0.0});
    g[0] = Complex{rnorm, 0.0};

    Index m_used = 0;
    for (Index j = 0; j < opts.restart && rep.inner_iterations < opts.max_total;
         ++j) {
      DenseVector w = op.apply(basis[static_cast<std::size_t>(j)]);
      op_norm_est = std::max(op_norm_est, norm2(w));

      std::vector<Complex> h(static_cast<std::size_t>(j) + 2,
                             Complex{0.0, 0.0});
      orthogonalize(basis, j + 1, w, h);
      const double hnext = norm2(w);
      ++rep.inner_iterations;
      m_used = j + 1;

      for (Index i = 0; i < j; ++i) {
        apply_givens(rots[static_cast<std::size_t>(i)],
                     h[static_cast<std::size_t>(i)],
                     h[static_cast<std::size_t>(i) + 1]);
      }

      if (hnext <= 1e-14 * op_norm_est) {
        // Exactly invariant subspace. Row j+1 of the Hessenberg is zero, so
        // the least-squares system is already triangular including this
        // column; keep it and solve in-space.
        hcols.push_back(std::move(h));
        breakdown_pending = true;
        break;
      }

      const Givens rot = make_givens(h[static_cast<std::size_t>(j)], hnext);
      h[static_cast<std::size_t>(j)] =
          rot.c * h[static_cast<std::size_t>(j)] +
          rot.s * Complex{hnext, 0.0};
      rots.push_back(rot);
      hcols.push_back(std::move(h));
      apply_givens(rot, g[static_cast<std::size_t>(j)],
                   g[static_cast<std::size_t>(j) + 1]);

      const double est = std::abs(g[static_cast<std::size_t>(j) + 1]) / bnorm;
      rep.residual_estimates.push_back(est);

      if (est <= opts.tol) {
        break;
      }
      scale(Complex{1.0 / hnext, 0.0}, w);
      basis.push_back(std::move(w));
    }

    // Back-substitution on the rotated (triangular) Hessenberg columns.
    const Index mm = m_used;
    std::vector<Complex> y(static_cast<std::size_t>(mm), Complex{0.0, 0.0});
    for (Index i = mm - 1; i >= 0; --i) {
      Complex s = g[static_cast<std::size_t>(i)];
      for (Index k = i + 1; k < mm; ++k) {
        s -= hcols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
             y[static_cast<std::size_t>(k)];
      }
      const Complex d =
          hcols[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      // A singular diagonal can only appear when the operator is singular
      // on the Krylov space; drop the component and let the explicit
      // residual decide.
      y[static_cast<std::size_t>(i)] = std::abs(d) > 0.0 ? s / d : Complex{};
    }
    for (Index i = 0; i < mm; ++i) {
      axpy(y[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(i)],
           x);
    }
  }

  rep.solution = std::move(x);
  return rep;
}

}  // namespace leftmost
