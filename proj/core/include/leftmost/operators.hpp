// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "leftmost/csr.hpp"

namespace leftmost {

/**
 * @brief Square linear operator seen only through y = Op x.
 *
 * The Krylov kernels never touch matrix storage, which keeps shifted and
 * implicitly defined operators cheap: (A - sigma I) is never assembled.
 */
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Index dim() const = 0;
  virtual void apply(const DenseVector& x, DenseVector& y) const = 0;
  DenseVector apply(const DenseVector& x) const {
    DenseVector y;
    apply(x, y);
    return y;
  }
};

class CsrOperator final : public LinearOperator {
 public:
  explicit CsrOperator(const CsrMatrix& a);
  using LinearOperator::apply;
  Index dim() const override { return a_->n_rows; }
  void apply(const DenseVector& x, DenseVector& y) const override;

 private:
  const CsrMatrix* a_;  // not owned, must outlive the operator
};

/**
 * @brief (A - sigma I) x without forming the shifted matrix.
 */
class ShiftedOperator final : public LinearOperator {
 public:
  ShiftedOperator(const CsrMatrix& base, Complex shift);
  using LinearOperator::apply;
  Index dim() const override { return base_->n_rows; }
  void apply(const DenseVector& x, DenseVector& y) const override;
  Complex shift() const { return shift_; }

 private:
  const CsrMatrix* base_;  // not owned, must outlive the operator
  Complex shift_;
};

// Glue for operators that exist only as a function; used heavily in tests.
class FunctionOperator final : public LinearOperator {
 public:
  FunctionOperator(Index n,
                   std::function<void(const DenseVector&, DenseVector&)> fn)
      : n_(n), fn_(std::move(fn)) {}
  using LinearOperator::apply;
  Index dim() const override { return n_; }
  void apply(const DenseVector& x, DenseVector& y) const override {
    fn_(x, y);
  }

 private:
  Index n_;
  std::function<void(const DenseVector&, DenseVector&)> fn_;
};

}  // namespace leftmost
