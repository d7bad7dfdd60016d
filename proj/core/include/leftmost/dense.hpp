// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace leftmost {

using Index = std::int64_t;
using Complex = std::complex<double>;

// Dense column vector. Entries stay complex even when the matrix is real:
// shifts, Ritz values and eigenvectors of nonsymmetric operators are not.
using DenseVector = std::vector<Complex>;

// Conjugated inner product <a, b> = a^H b.
Complex dot(const DenseVector& a, const DenseVector& b);

double norm2(const DenseVector& v);

// y += alpha * x
void axpy(Complex alpha, const DenseVector& x, DenseVector& y);

void scale(Complex alpha, DenseVector& v);

// v /= ||v||, returns the original norm. A zero vector is left untouched.
double normalize(DenseVector& v);

bool all_finite(const DenseVector& v);

// Deterministic start vector: mt19937_64(seed), uniform on [-1, 1],
// real-valued, normalized. Same seed gives the same vector bit for bit.
DenseVector seeded_unit_vector(Index n, std::uint64_t seed);

}  // namespace leftmost
