// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "leftmost/dense.hpp"

namespace leftmost {

struct Triplet {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

/**
 * @brief Compressed sparse row matrix with real 64-bit entries.
 *
 * Immutable after construction; solvers treat it as read-only. Column
 * indices are strictly increasing within each row and duplicates have been
 * merged. Structural zeros are kept: an explicitly stored 0.0 stays in the
 * pattern, so read/write cycles preserve structure exactly.
 */
struct CsrMatrix {
  Index n_rows = 0;
  Index n_cols = 0;
  std::vector<Index> row_ptr;  // size n_rows + 1, row_ptr[0] == 0
  std::vector<Index> col_idx;  // size nnz, sorted within each row
  std::vector<double> values;  // size nnz, aligned with col_idx

  Index nnz() const { return static_cast<Index>(col_idx.size()); }
};

// Builds CSR from an unordered triplet list. Duplicate (row, col) entries
// are summed and the merged entry is kept even when the sum is 0.0.
// Throws std::invalid_argument on negative sizes or out-of-range indices.
CsrMatrix csr_from_triplets(Index n_rows, Index n_cols,
                            const std::vector<Triplet>& triplets);

// y = A x. Each row is an independent dot product, so the result does not
// depend on traversal order. Throws std::invalid_argument on size mismatch.
void matvec(const CsrMatrix& a, const DenseVector& x, DenseVector& y);
DenseVector matvec(const CsrMatrix& a, const DenseVector& x);

double frobenius_norm(const CsrMatrix& a);

// Transpose through triplets. Pattern and values only; nothing is dropped.
CsrMatrix transpose(const CsrMatrix& a);

// ||A x - lambda x|| for a unit vector x. ||x|| must be 1 within 1e-12;
// anything else is a usage error (std::invalid_argument).
double eig_residual(const CsrMatrix& a, Complex lambda, const DenseVector& x);

}  // namespace leftmost
