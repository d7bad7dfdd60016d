// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suites: dense bridges to Eigen, seeded random
// matrix generators, and small numeric utilities. Everything here is
// deliberately independent of the library's own algorithms so it can serve
// as an oracle.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "leftmost/csr.hpp"
#include "leftmost/dense.hpp"

namespace testsupport {

using leftmost::Complex;
using leftmost::CsrMatrix;
using leftmost::DenseVector;
using leftmost::Index;
using leftmost::Triplet;

using EMatrix = Eigen::MatrixXd;
using ECMatrix = Eigen::MatrixXcd;
using EVector = Eigen::VectorXd;
using ECVector = Eigen::VectorXcd;

inline EMatrix to_dense(const CsrMatrix& a) {
  EMatrix m = EMatrix::Zero(a.n_rows, a.n_cols);
  for (Index i = 0; i < a.n_rows; ++i)
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      m(i, a.col_idx[p]) = a.values[p];
  return m;
}

inline CsrMatrix from_dense(const EMatrix& m, double drop_below = 0.0) {
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > drop_below || m(i, j) != 0.0)
        t.push_back({static_cast<Index>(i), static_cast<Index>(j), m(i, j)});
  return leftmost::csr_from_triplets(m.rows(), m.cols(), t);
}

inline ECVector to_eigen(const DenseVector& v) {
  ECVector e(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
  return e;
}

inline DenseVector from_eigen(const ECVector& e) {
  DenseVector v(static_cast<size_t>(e.size()));
  for (Eigen::Index i = 0; i < e.size(); ++i) v[static_cast<size_t>(i)] = e(i);
  return v;
}

// All eigenvalues of a general real matrix, sorted by (Re, Im).
inline std::vector<Complex> dense_eigenvalues(const CsrMatrix& a) {
  Eigen::EigenSolver<EMatrix> es(to_dense(a));
  std::vector<Complex> vals(static_cast<size_t>(a.n_rows));
  for (Index i = 0; i < a.n_rows; ++i)
    vals[static_cast<size_t>(i)] = es.eigenvalues()(i);
  std::sort(vals.begin(), vals.end(), [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });
  return vals;
}

inline Complex dense_leftmost(const CsrMatrix& a) {
  return dense_eigenvalues(a).front();
}

// Direct dense solve of (A - sigma I) x = b.
inline DenseVector dense_shifted_solve(const CsrMatrix& a, Complex sigma,
                                       const DenseVector& b) {
  ECMatrix m = to_dense(a).cast<Complex>();
  m -= sigma * ECMatrix::Identity(a.n_rows, a.n_rows);
  return from_eigen(m.partialPivLu().solve(to_eigen(b)));
}

// Random sparse matrix with ~nnz_per_row off-diagonal entries per row in
// [-1, 1] and a diagonal offset making it comfortably nonsingular.
inline CsrMatrix random_sparse(Index n, Index nnz_per_row, std::uint64_t seed,
                               double diag_boost = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_int_distribution<Index> col(0, n - 1);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < nnz_per_row; ++k) t.push_back({i, col(rng), val(rng)});
    if (diag_boost != 0.0) t.push_back({i, i, diag_boost});
  }
  return leftmost::csr_from_triplets(n, n, t);
}

// Symmetric matrix Q D Q^T with prescribed eigenvalues, Q from the QR
// factorization of a seeded Gaussian matrix. Returned fully dense in CSR.
inline CsrMatrix symmetric_with_spectrum(const std::vector<double>& eigenvalues,
                                         std::uint64_t seed) {
  const Eigen::Index n = static_cast<Eigen::Index>(eigenvalues.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  EMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
  EMatrix q = Eigen::HouseholderQR<EMatrix>(g).householderQ();
  EVector d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = eigenvalues[static_cast<size_t>(i)];
  EMatrix a = q * d.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose());  // kill rounding asymmetry
  return from_dense(a);
}

// 7-point finite-difference Laplacian (negated, positive semidefinite) on an
// n x n x n periodic grid, built directly from triplets.
inline CsrMatrix laplacian_3d(Index n) {
  auto site = [n](Index i, Index j, Index k) {
    auto w = [n](Index v) { return ((v % n) + n) % n; };
    return w(i) + n * (w(j) + n * w(k));
  };
  std::vector<Triplet> t;
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        const Index s = site(i, j, k);
        t.push_back({s, s, 6.0});
        t.push_back({s, site(i + 1, j, k), -1.0});
        t.push_back({s, site(i - 1, j, k), -1.0});
        t.push_back({s, site(i, j + 1, k), -1.0});
        t.push_back({s, site(i, j - 1, k), -1.0});
        t.push_back({s, site(i, j, k + 1), -1.0});
        t.push_back({s, site(i, j, k - 1), -1.0});
      }
  const Index order = n * n * n;
  return leftmost::csr_from_triplets(order, order, t);
}

// Dirichlet variant: out-of-range neighbors are dropped, so the matrix is
// positive definite with a known sine-mode spectrum.
inline CsrMatrix laplacian_3d_dirichlet(Index n) {
  auto site = [n](Index i, Index j, Index k) { return i + n * (j + n * k); };
  std::vector<Triplet> t;
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        const Index s = site(i, j, k);
        t.push_back({s, s, 6.0});
        if (i + 1 < n) t.push_back({s, site(i + 1, j, k), -1.0});
        if (i > 0) t.push_back({s, site(i - 1, j, k), -1.0});
        if (j + 1 < n) t.push_back({s, site(i, j + 1, k), -1.0});
        if (j > 0) t.push_back({s, site(i, j - 1, k), -1.0});
        if (k + 1 < n) t.push_back({s, site(i, j, k + 1), -1.0});
        if (k > 0) t.push_back({s, site(i, j, k - 1), -1.0});
      }
  const Index order = n * n * n;
  return leftmost::csr_from_triplets(order, order, t);
}

inline CsrMatrix negated(const CsrMatrix& a) {
  CsrMatrix out = a;
  for (double& v : out.values) v = -v;
  return out;
}

inline DenseVector random_complex_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseVector v(static_cast<size_t>(n));
  for (auto& x : v) x = Complex{u(rng), u(rng)};
  return v;
}

inline DenseVector random_real_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseVector v(static_cast<size_t>(n));
  for (auto& x : v) x = Complex{u(rng), 0.0};
  return v;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testsupport
