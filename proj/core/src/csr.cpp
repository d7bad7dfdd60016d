// SPDX-License-Identifier: Apache-2.0

#include "leftmost/csr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leftmost {

CsrMatrix csr_from_triplets(Index n_rows, Index n_cols,
                            const std::vector<Triplet>& triplets) {
  if (n_rows < 0 || n_cols < 0) {
    throw std::invalid_argument("csr_from_triplets: negative dimension");
  }
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      throw std::invalid_argument(
          "csr_from_triplets: index (" + std::to_string(t.row) + ", " +
          std::to_string(t.col) + ") out of range for " +
          std::to_string(n_rows) + "x" + std::to_string(n_cols));
    }
  }

  std::vector<Triplet> sorted = triplets;
  std::sort(sorted.begin(), sorted.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  CsrMatrix m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_ptr.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  m.col_idx.reserve(sorted.size());
  m.values.reserve(sorted.size());

  for (std::size_t i = 0; i < sorted.size();) {
    const Index r = sorted[i].row;
    const Index c = sorted[i].col;
    double sum = 0.0;
    // Duplicates are adjacent after the sort; the merged entry survives
    // even when the values cancel exactly.
    while (i < sorted.size() && sorted[i].row == r && sorted[i].col == c) {
      sum += sorted[i].value;
      ++i;
    }
    m.col_idx.push_back(c);
    m.values.push_back(sum);
    ++m.row_ptr[static_cast<std::size_t>(r) + 1];
  }
  for (Index r = 0; r < n_rows; ++r) {
    m.row_ptr[static_cast<std::size_t>(r) + 1] +=
        m.row_ptr[static_cast<std::size_t>(r)];
  }
  return m;
}

void matvec(const CsrMatrix& a, const DenseVector& x, DenseVector& y) {
  if (static_cast<Index>(x.size()) != a.n_cols) {
    throw std::invalid_argument("matvec: x has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(a.n_cols));
  }
  y.assign(static_cast<std::size_t>(a.n_rows), Complex{0.0, 0.0});
  for (Index r = 0; r < a.n_rows; ++r) {
    Complex s{0.0, 0.0};
    const Index end = a.row_ptr[static_cast<std::size_t>(r) + 1];
    for (Index k = a.row_ptr[static_cast<std::size_t>(r)]; k < end; ++k) {
      s += a.values[static_cast<std::size_t>(k)] *
           x[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(k)])];
    }
    y[static_cast<std::size_t>(r)] = s;
  }
}

DenseVector matvec(const CsrMatrix& a, const DenseVector& x) {
  DenseVector y;
  matvec(a, x, y);
  return y;
}

double frobenius_norm(const CsrMatrix& a) {
  double s = 0.0;
  for (double v : a.values) {
    s += v * v;
  }
  return std::sqrt(s);
}

CsrMatrix transpose(const CsrMatrix& a) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nnz()));
  for (Index r = 0; r < a.n_rows; ++r) {
    const Index end = a.row_ptr[static_cast<std::size_t>(r) + 1];
    for (Index k = a.row_ptr[static_cast<std::size_t>(r)]; k < end; ++k) {
      t.push_back({a.col_idx[static_cast<std::size_t>(k)], r,
                   a.values[static_cast<std::size_t>(k)]});
    }
  }
  return csr_from_triplets(a.n_cols, a.n_rows, t);
}

double eig_residual(const CsrMatrix& a, Complex lambda, const DenseVector& x) {
  if (a.n_rows != a.n_cols) {
    throw std::invalid_argument("eig_residual: matrix must be square");
  }
  const double nx = norm2(x);
  if (std::abs(nx - 1.0) > 1e-12) {
    throw std::invalid_argument("eig_residual: x must be a unit vector");
  }
  DenseVector r = matvec(a, x);
  axpy(-lambda, x, r);
  return norm2(r);
}

}  // namespace leftmost
