// SPDX-License-Identifier: Apache-2.0

#include "leftmost/seo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace leftmost {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TorusGrid::TorusGrid(Index n_) : n(n_) {
  if (n < 3) {
    throw std::invalid_argument("TorusGrid: need n >= 3, got " +
                                std::to_string(n));
  }
  h = 2.0 * kPi / static_cast<double>(n);
}

FlowField make_abc_flow(double a, double b, double c) {
  FlowField f;
  f.kind = "abc";
  f.params = {{"A", a}, {"B", b}, {"C", c}};
  f.eval = [a, b, c](const Vec3& p) {
    return Vec3{a * std::sin(p.z) + c * std::cos(p.y),
                b * std::sin(p.x) + a * std::cos(p.z),
                c * std::sin(p.y) + b * std::cos(p.x)};
  };
  return f;
}

FlowField make_kuramoto_flow(double omega_x, double omega_y, double omega_z,
                             double k) {
  FlowField f;
  f.kind = "kuramoto";
  f.params = {{"omega_x", omega_x},
              {"omega_y", omega_y},
              {"omega_z", omega_z},
              {"K", k}};
  const double q = k / 4.0;
  f.eval = [omega_x, omega_y, omega_z, q](const Vec3& p) {
    const double sx = std::sin(p.x);
    const double sy = std::sin(p.y);
    const double sz = std::sin(p.z);
    const double sxy = std::sin(p.x + p.y);
    const double syz = std::sin(p.y + p.z);
    const double sxyz = std::sin(p.x + p.y + p.z);
    return Vec3{omega_x - q * (2.0 * sx + sxy + sxyz - sy - syz),
                omega_y - q * (2.0 * sy + sxy + syz - sx - sz),
                omega_z - q * (2.0 * sz + syz + sxyz - sy - sxy)};
  };
  return f;
}

FlowField make_zero_flow() {
  FlowField f;
  f.kind = "zero";
  f.eval = [](const Vec3&) { return Vec3{}; };
  return f;
}

bool check_periodicity(const FlowField& flow, int samples, std::uint64_t seed,
                       double tol) {
  if (!flow.eval) return false;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (int s = 0; s < samples; ++s) {
    const Vec3 p{dist(gen), dist(gen), dist(gen)};
    const Vec3 f0 = flow.eval(p);
    const Vec3 shifts[3] = {{2.0 * kPi, 0.0, 0.0},
                            {0.0, 2.0 * kPi, 0.0},
                            {0.0, 0.0, 2.0 * kPi}};
    for (const Vec3& d : shifts) {
      const Vec3 f1 = flow.eval({p.x + d.x, p.y + d.y, p.z + d.z});
      if (std::abs(f1.x - f0.x) > tol || std::abs(f1.y - f0.y) > tol ||
          std::abs(f1.z - f0.z) > tol) {
        return false;
      }
    }
  }
  return true;
}

namespace {

void require_flow(const FlowField& flow) {
  if (!flow.eval) {
    throw std::invalid_argument("flow field has no evaluator");
  }
  if (!check_periodicity(flow)) {
    throw std::invalid_argument("flow field is not 2 pi periodic");
  }
}

}  // namespace

CsrMatrix build_zero_form_seo(const TorusGrid& grid, const FlowField& flow,
                              double theta) {
  if (theta <= 0.0) {
    throw std::invalid_argument("zero-form generator: theta must be positive");
  }
  require_flow(flow);

  const Index n = grid.n;
  const double h = grid.h;
  const double t = theta / (h * h);
  const Index dim = grid.sites();

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(7 * dim));

  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const Index row = grid.site_index(i, j, k);
        const auto c = grid.coords(i, j, k);
        const Vec3 f = flow.eval({c[0], c[1], c[2]});
        const double ax = f.x / (2.0 * h);
        const double ay = f.y / (2.0 * h);
        const double az = f.z / (2.0 * h);

        trips.push_back({row, grid.site_index(i + 1, j, k), ax - t});
        trips.push_back({row, grid.site_index(i - 1, j, k), -ax - t});
        trips.push_back({row, grid.site_index(i, j + 1, k), ay - t});
        trips.push_back({row, grid.site_index(i, j - 1, k), -ay - t});
        trips.push_back({row, grid.site_index(i, j, k + 1), az - t});
        trips.push_back({row, grid.site_index(i, j, k - 1), -az - t});
        trips.push_back({row, row, 6.0 * t});
      }
    }
  }
  return csr_from_triplets(dim, dim, trips);
}

CsrMatrix build_dynamo_operator(const TorusGrid& grid, const FlowField& flow,
                                double inv_rm) {
  if (inv_rm <= 0.0) {
    throw std::invalid_argument("dynamo operator: 1/R_m must be positive");
  }
  require_flow(flow);

  const Index n = grid.n;
  const double h = grid.h;
  const double nu = inv_rm / (h * h);
  const Index ns = grid.sites();
  const Index dim = 3 * ns;

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(11 * dim));

  // Unknown index for field component c at a site.
  const auto at = [ns](Index c, Index site) { return c * ns + site; };

  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const Index s = grid.site_index(i, j, k);
        const Index sxp = grid.site_index(i + 1, j, k);
        const Index sxm = grid.site_index(i - 1, j, k);
        const Index syp = grid.site_index(i, j + 1, k);
        const Index sym = grid.site_index(i, j - 1, k);
        const Index szp = grid.site_index(i, j, k + 1);
        const Index szm = grid.site_index(i, j, k - 1);

        // Flow at the six neighbor sites; the electromotive field F x B is
        // discretized pointwise before the curl differences, so the curl
        // picks up F at the neighbors, never at the center.
        const auto fat = [&](Index ii, Index jj, Index kk) {
          const auto c = grid.coords(ii, jj, kk);
          return flow.eval({c[0], c[1], c[2]});
        };
        const Vec3 fxp = fat(i + 1, j, k);
        const Vec3 fxm = fat(i - 1, j, k);
        const Vec3 fyp = fat(i, j + 1, k);
        const Vec3 fym = fat(i, j - 1, k);
        const Vec3 fzp = fat(i, j, k + 1);
        const Vec3 fzm = fat(i, j, k - 1);

        const double w = 1.0 / (2.0 * h);

        // Diffusion block -inv_rm Lap, identical for every component.
        for (Index c = 0; c < 3; ++c) {
          const Index row = at(c, s);
          trips.push_back({row, at(c, sxp), -nu});
          trips.push_back({row, at(c, sxm), -nu});
          trips.push_back({row, at(c, syp), -nu});
          trips.push_back({row, at(c, sym), -nu});
          trips.push_back({row, at(c, szp), -nu});
          trips.push_back({row, at(c, szm), -nu});
          trips.push_back({row, row, 6.0 * nu});
        }

        // x row: -(d/dy (F x B)_z - d/dz (F x B)_y) with
        // (F x B)_z = Fx By - Fy Bx, (F x B)_y = Fz Bx - Fx Bz.
        {
          const Index row = at(0, s);
          trips.push_back({row, at(1, syp), -w * fyp.x});
          trips.push_back({row, at(0, syp), w * fyp.y});
          trips.push_back({row, at(1, sym), w * fym.x});
          trips.push_back({row, at(0, sym), -w * fym.y});
          trips.push_back({row, at(0, szp), w * fzp.z});
          trips.push_back({row, at(2, szp), -w * fzp.x});
          trips.push_back({row, at(0, szm), -w * fzm.z});
          trips.push_back({row, at(2, szm), w * fzm.x});
        }

        // y row: -(d/dz (F x B)_x - d/dx (F x B)_z) with
        // (F x B)_x = Fy Bz - Fz By.
        {
          const Index row = at(1, s);
          trips.push_back({row, at(2, szp), -w * fzp.y});
          trips.push_back({row, at(1, szp), w * fzp.z});
          trips.push_back({row, at(2, szm), w * fzm.y});
          trips.push_back({row, at(1, szm), -w * fzm.z});
          trips.push_back({row, at(1, sxp), w * fxp.x});
          trips.push_back({row, at(0, sxp), -w * fxp.y});
          trips.push_back({row, at(1, sxm), -w * fxm.x});
          trips.push_back({row, at(0, sxm), w * fxm.y});
        }

        // z row: -(d/dx (F x B)_y - d/dy (F x B)_x).
        {
          const Index row = at(2, s);
          trips.push_back({row, at(0, sxp), -w * fxp.z});
          trips.push_back({row, at(2, sxp), w * fxp.x});
          trips.push_back({row, at(0, sxm), w * fxm.z});
          trips.push_back({row, at(2, sxm), -w * fxm.x});
          trips.push_back({row, at(2, syp), w * fyp.y});
          trips.push_back({row, at(1, syp), -w * fyp.z});
          trips.push_back({row, at(2, sym), -w * fym.y});
          trips.push_back({row, at(1, sym), w * fym.z});
        }
      }
    }
  }
  return csr_from_triplets(dim, dim, trips);
}

CsrMatrix build_seo(const SeoMatrixSpec& spec) {
  const TorusGrid grid(spec.grid_n);
  switch (spec.op) {
    case SeoOperator::zero_form:
      return build_zero_form_seo(grid, spec.flow, spec.diffusion);
    case SeoOperator::dynamo:
      return build_dynamo_operator(grid, spec.flow, spec.diffusion);
  }
  throw std::invalid_argument("build_seo: unknown operator kind");
}

}  // namespace leftmost
