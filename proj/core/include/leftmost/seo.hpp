// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "leftmost/csr.hpp"

namespace leftmost {

/**
 * @brief Uniform periodic grid on the torus [-pi, pi)^3.
 *
 * Sites are ordered x fastest: site_index(i, j, k) = i + n j + n^2 k.
 */
struct TorusGrid {
  explicit TorusGrid(Index n);

  Index n = 0;     // sites per dimension, n >= 3 so stencil neighbors differ
  double h = 0.0;  // 2 pi / n

  Index sites() const { return n * n * n; }
  Index wrap(Index i) const { return ((i % n) + n) % n; }
  Index site_index(Index i, Index j, Index k) const {
    return wrap(i) + n * (wrap(j) + n * wrap(k));
  }
  std::array<double, 3> coords(Index i, Index j, Index k) const {
    const double pi = 3.14159265358979323846;
    return {-pi + static_cast<double>(i) * h,
            -pi + static_cast<double>(j) * h,
            -pi + static_cast<double>(k) * h};
  }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/**
 * @brief Velocity field on the torus, 2 pi periodic in each coordinate.
 */
struct FlowField {
  std::string kind;  // "abc", "kuramoto", "zero", or "custom"
  std::map<std::string, double> params;
  std::function<Vec3(const Vec3&)> eval;
};

FlowField make_abc_flow(double a, double b, double c);

// Four globally coupled phase oscillators in difference coordinates;
// omega_* are frequency differences and k the coupling strength.
FlowField make_kuramoto_flow(double omega_x, double omega_y, double omega_z,
                             double k);

FlowField make_zero_flow();

// Samples |F(p) - F(p + 2 pi e_d)| at random points; all differences must
// stay within tol.
bool check_periodicity(const FlowField& flow, int samples = 16,
                       std::uint64_t seed = 7, double tol = 1e-12);

enum class SeoOperator { zero_form, dynamo };

struct SeoMatrixSpec {
  std::string model;  // "abc" | "kuramoto" | free-form for custom flows
  Index grid_n = 0;
  FlowField flow;
  SeoOperator op = SeoOperator::zero_form;
  double diffusion = 0.0;  // theta for zero_form, 1/R_m for dynamo
};

// Scalar advection-diffusion generator H f = F . grad f - theta Lap f with
// 2nd-order central differences and the 7-point Laplacian, periodic wrap.
// Row sums vanish by construction (constants are in the kernel). Order n^3.
CsrMatrix build_zero_form_seo(const TorusGrid& grid, const FlowField& flow,
                              double theta);

// Induction generator H B = -(curl(F x B) + inv_rm Lap B) on 3-component
// fields stored component-major: index = c n^3 + site. Central differences
// everywhere; at most 13 entries per row. Order 3 n^3. Eigenvalues with
// negative real part are growing modes of the field evolution.
CsrMatrix build_dynamo_operator(const TorusGrid& grid, const FlowField& flow,
                                double inv_rm);

CsrMatrix build_seo(const SeoMatrixSpec& spec);

}  // namespace leftmost
