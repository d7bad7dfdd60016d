// SPDX-License-Identifier: Apache-2.0

#include "leftmost/dense.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace leftmost {

Complex dot(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

double norm2(const DenseVector& v) {
  double s = 0.0;
  for (const Complex& c : v) {
    s += std::norm(c);
  }
  return std::sqrt(s);
}

void axpy(Complex alpha, const DenseVector& x, DenseVector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("axpy: length mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] += alpha * x[i];
  }
}

void scale(Complex alpha, DenseVector& v) {
  for (Complex& c : v) {
    c *= alpha;
  }
}

double normalize(DenseVector& v) {
  const double n = norm2(v);
  if (n > 0.0) {
    scale(Complex{1.0 / n, 0.0}, v);
  }
  return n;
}

bool all_finite(const DenseVector& v) {
  for (const Complex& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      return false;
    }
  }
  return true;
}

DenseVector seeded_unit_vector(Index n, std::uint64_t seed) {
  if (n <= 0) {
    throw std::invalid_argument("seeded_unit_vector: n must be positive");
  }
  std::mt19937_64 rng{seed};
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseVector v(static_cast<std::size_t>(n));
  for (Complex& c : v) {
    c = Complex{dist(rng), 0.0};
  }
  normalize(v);
  return v;
}

}  // namespace leftmost
