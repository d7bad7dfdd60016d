// SPDX-License-Identifier: Apache-2.0

#include "leftmost/operators.hpp"

#include <stdexcept>

namespace leftmost {

CsrOperator::CsrOperator(const CsrMatrix& a) : a_(&a) {
  if (a.n_rows != a.n_cols) {
    throw std::invalid_argument("CsrOperator: matrix must be square");
  }
}

void CsrOperator::apply(const DenseVector& x, DenseVector& y) const {
  matvec(*a_, x, y);
}

ShiftedOperator::ShiftedOperator(const CsrMatrix& base, Complex shift)
    : base_(&base), shift_(shift) {
  if (base.n_rows != base.n_cols) {
    throw std::invalid_argument("ShiftedOperator: matrix must be square");
  }
}

void ShiftedOperator::apply(const DenseVector& x, DenseVector& y) const {
  matvec(*base_, x, y);
  axpy(-shift_, x, y);
}

}  // namespace leftmost
