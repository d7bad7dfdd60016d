// Release checklist for the solver stack. Each criterion prints exactly one
// PASS/FAIL line with the measured numbers; the exit status is the number of
// failed criteria. Run without arguments for the full list, or pass criterion
// ids to run a subset, e.g. `acceptance 1 9 10`.
//
// Artifacts (contour CSVs, statistics tables) land in the working directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leftmost/eigsolve.hpp"
#include "leftmost/krylov.hpp"
#include "leftmost/matrix_market.hpp"
#include "leftmost/operators.hpp"
#include "leftmost/seo.hpp"
#include "leftmost/sweep.hpp"
#include "support.hpp"

using namespace leftmost;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

EMatrix random_gaussian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  EMatrix m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = g(rng);
  return m;
}

EMatrix random_orthogonal(Index n, std::mt19937_64& rng) {
  return Eigen::HouseholderQR<EMatrix>(random_gaussian(n, rng))
      .householderQ() *
         EMatrix::Identity(n, n);
}

double two_norm(const EMatrix& m) {
  return Eigen::JacobiSVD<EMatrix>(m).singularValues()(0);
}

// ---------------------------------------------------------------------------
// 1. Leftmost eigenvalue against a dense oracle on seeded symmetric matrices.

Outcome criterion_leftmost_oracle() {
  const Index n = 200;
  double worst = 0.0;
  int failed = 0;
  std::string first_bad;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed * 977 + 13);
    std::uniform_real_distribution<double> head(2.0, 6.0), gap(1.0, 3.0),
        bulk(0.0, 50.0);
    std::vector<double> spectrum(n);
    spectrum[0] = -head(rng);
    spectrum[1] = spectrum[0] + gap(rng);
    for (Index i = 2; i < n; ++i) spectrum[i] = spectrum[1] + bulk(rng);
    const CsrMatrix a = symmetric_with_spectrum(spectrum, seed);

    const auto est = leftmost_estimate(a, 60, 1e-4, 200, seed);
    SolverConfig cfg;
    cfg.inner_tol = 1e-2;
    cfg.outer_tol = 1e-10;
    cfg.gmres_restart = n;
    const EigResult r = iipm(a, est.sigma0, est.x0, cfg);

    Eigen::SelfAdjointEigenSolver<EMatrix> es(to_dense(a),
                                              Eigen::EigenvaluesOnly);
    const double oracle = es.eigenvalues()(0);
    const double diff = std::abs(r.lambda - Complex(oracle, 0.0));
    worst = std::max(worst, diff);
    if (!r.converged || diff > 1e-8) {
      ++failed;
      if (first_bad.empty())
        first_bad = fmt(" first failure: seed %llu conv=%d dlam=%.2e",
                        static_cast<unsigned long long>(seed),
                        r.converged ? 1 : 0, diff);
    }
  }
  return {failed == 0, fmt("20 matrices n=200, max |dlambda| = %.2e "
                           "(tol 1e-8), %d failures%s",
                           worst, failed, first_bad.c_str())};
}

// ---------------------------------------------------------------------------
// 2. Exact vs inexact inner solves: outer counts stay within +3.

struct CasePair {
  std::string name;
  Index exact_outer = 0;
  Index inexact_outer = 0;
  bool ok = false;
};

CasePair run_endpoint(const std::string& name, const CsrMatrix& w) {
  // Coarse bootstrap: the handoff should carry a real residual so both
  // methods do substantive work; a tight one can converge outright and
  // reduce the comparison to zero iterations on each side. Small cycles
  // matter as much as the tolerance, since a large Krylov cycle can jump
  // from no convergence to machine precision within one restart.
  const auto est = leftmost_estimate(w, 15, 1e-4, 300, 7);
  // The Ritz value converges quadratically, so the handoff shift can sit
  // within machine distance of the eigenvalue even when the vector is still
  // coarse; a fixed-shift exact solve cannot work there. Start both methods
  // from a shift backed off by the handoff residual.
  const Complex sigma =
      est.sigma0 - std::max(est.residual, 1e-6 * (1.0 + std::abs(est.sigma0)));
  SolverConfig cfg;
  cfg.outer_tol = 1e-10;
  cfg.max_outer = 100;
  const EigResult ex = exact_ipm(w, sigma, est.x0, cfg);
  cfg.inner_tol = 1e-2;
  cfg.gmres_restart = 200;
  const EigResult in = iipm(w, sigma, est.x0, cfg);
  CasePair c;
  c.name = name;
  c.exact_outer = ex.outer_iterations;
  c.inexact_outer = in.outer_iterations;
  c.ok = ex.converged && in.converged &&
         in.outer_iterations <= ex.outer_iterations + 3;
  return c;
}

Outcome criterion_exact_vs_inexact() {
  const CsrMatrix lap = laplacian_3d_dirichlet(10);
  const CsrMatrix rnd = symmetrize(random_sparse(2000, 5, 42));
  std::vector<CasePair> cases;
  cases.push_back(run_endpoint("lap sa", lap));
  cases.push_back(run_endpoint("lap la", negated(lap)));
  cases.push_back(run_endpoint("rand sa", rnd));
  cases.push_back(run_endpoint("rand la", negated(rnd)));
  bool pass = true;
  std::string d;
  for (const auto& c : cases) {
    pass = pass && c.ok;
    d += fmt("%s%s exact %lld / inexact %lld%s", d.empty() ? "" : ", ",
             c.name.c_str(), static_cast<long long>(c.exact_outer),
             static_cast<long long>(c.inexact_outer), c.ok ? "" : " (!)");
  }
  return {pass, d + " (inexact <= exact + 3)"};
}

// ---------------------------------------------------------------------------
// 3. One-step angle contraction under perturbations below the certified bound.

struct ContractionSetup {
  EMatrix a;       // symmetric, eigenvalues 5, 100, then bulk in [150, 500]
  EVector x;       // eigenvector of the smallest eigenvalue
  EMatrix q_rest;  // orthonormal complement of x
};

ContractionSetup contraction_setup(std::uint64_t seed) {
  const Index n = 50;
  std::mt19937_64 rng(seed);
  const EMatrix q = random_orthogonal(n, rng);
  EVector d(n);
  d(0) = 5.0;
  d(1) = 100.0;
  std::uniform_real_distribution<double> bulk(150.0, 500.0);
  for (Index i = 2; i < n; ++i) d(i) = bulk(rng);
  ContractionSetup s;
  s.a = q * d.asDiagonal() * q.transpose();
  s.a = 0.5 * (s.a + s.a.transpose());
  s.x = q.col(0);
  s.q_rest = q.rightCols(n - 1);
  return s;
}

Outcome criterion_angle_contraction() {
  const auto s = contraction_setup(1234);
  const Index n = s.a.rows();
  // With sigma = 0 the resolvent eigenvalues are 1/5 and 1/100: mu1 = 20 mu2.
  const double mu1 = 0.2, mu2 = 0.01;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ang(0.05, 1.5207963);
  std::uniform_real_distribution<double> frac(0.1, 0.9);
  std::normal_distribution<double> g(0.0, 1.0);
  int violations = 0;
  double worst_ratio = 0.0;
  std::string first_bad;
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = ang(rng);
    const double alpha = std::cos(theta), beta = std::sin(theta);
    EVector zc(n - 1);
    for (Index i = 0; i + 1 < n; ++i) zc(i) = g(rng);
    const EVector z = (s.q_rest * zc).normalized();
    const EVector x_i = alpha * s.x + beta * z;

    const double bound = epsilon_bound({alpha, beta, mu1, mu2});
    EMatrix da = random_gaussian(n, rng);
    da *= frac(rng) * 0.9 * bound / two_norm(da);

    const EVector y = (s.a + da).partialPivLu().solve(x_i);
    const double c = s.x.dot(y);
    const double tan_after = (y - c * s.x).norm() / std::abs(c);
    const double tan_before = beta / alpha;
    worst_ratio = std::max(worst_ratio, tan_after / tan_before);
    if (!(tan_after < tan_before)) {
      ++violations;
      if (first_bad.empty())
        first_bad = fmt(" first: trial %d tan %.3e -> %.3e", trial, tan_before,
                        tan_after);
    }
  }
  return {violations == 0,
          fmt("200 trials at ||dA|| <= 0.9 eps_bound: %d violations, worst "
              "tan ratio %.3f%s",
              violations, worst_ratio, first_bad.c_str())};
}

// ---------------------------------------------------------------------------
// 4. First-order perturbation of the inner solve: remainder is O(||dA||^2).

Outcome criterion_remainder_slope() {
  const auto s = contraction_setup(4321);
  const Index n = s.a.rows();
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);

  const double theta = 0.7;
  EVector zc(n - 1);
  for (Index i = 0; i + 1 < n; ++i) zc(i) = g(rng);
  const EVector x_i =
      std::cos(theta) * s.x + std::sin(theta) * (s.q_rest * zc).normalized();

  EMatrix dir = random_gaussian(n, rng);
  dir /= two_norm(dir);

  const auto lu = s.a.partialPivLu();
  const EVector y = lu.solve(x_i);
  const EVector first_order_unit = lu.solve(dir * y);  // (A)^{-1} dA y at t=1

  std::vector<double> logt, logr;
  for (int j = 0; j <= 10; ++j) {
    const double t = std::pow(10.0, -5.0 + 0.5 * j);
    const EVector y_t = (s.a + t * dir).partialPivLu().solve(x_i);
    const double rem = ((y - y_t) - t * first_order_unit).norm();
    logt.push_back(std::log10(t));
    logr.push_back(std::log10(rem));
  }
  // Least-squares slope of log r against log t.
  const double m = static_cast<double>(logt.size());
  double st = 0, sr = 0, stt = 0, str = 0;
  for (std::size_t i = 0; i < logt.size(); ++i) {
    st += logt[i];
    sr += logr[i];
    stt += logt[i] * logt[i];
    str += logt[i] * logr[i];
  }
  const double slope = (m * str - st * sr) / (m * stt - st * st);
  return {slope >= 1.9,
          fmt("remainder slope %.3f over ||dA|| in [1e-5, 1] (need >= 1.9)",
              slope)};
}

// ---------------------------------------------------------------------------
// 5. Rayleigh-quotient shifts: residual contracts quadratically at the end.

Outcome criterion_rq_contraction() {
  const Index n = 150;
  double worst_c = 0.0;
  int bad = 0;
  std::string note;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed * 31 + 5);
    std::uniform_real_distribution<double> bulk(3.0, 30.0);
    std::vector<double> spectrum(n);
    spectrum[0] = 1.0;
    spectrum[1] = 2.0;
    for (Index i = 2; i < n; ++i) spectrum[i] = bulk(rng);
    const CsrMatrix a = symmetric_with_spectrum(spectrum, seed);

    // Rough start: one exact inverse-power step from a random vector leaves
    // an O(1e-1) angle, so the history has room to show the contraction.
    const Complex sigma0(1.37, 0.0);
    DenseVector x1 = dense_shifted_solve(a, sigma0,
                                         seeded_unit_vector(n, seed + 400));
    normalize(x1);

    SolverConfig cfg;
    cfg.shift_policy = ShiftPolicy::rayleigh_quotient;
    cfg.inner_tol = 1e-12;
    // Stop well above the arithmetic floor of the recomputed residual
    // (~1e-14 here): transitions that bottom out there measure roundoff,
    // not the contraction order.
    cfg.outer_tol = 1e-5;
    cfg.max_outer = 50;
    cfg.gmres_restart = n;
    const EigResult r = iipm(a, sigma0, x1, cfg);

    const auto& h = r.outer_residual_history;
    if (!r.converged || h.size() < 3) {
      ++bad;
      note += fmt(" seed %llu: conv=%d history=%zu",
                  static_cast<unsigned long long>(seed), r.converged ? 1 : 0,
                  h.size());
      continue;
    }
    for (std::size_t k = h.size() - 2; k < h.size(); ++k) {
      const double c = h[k] / (h[k - 1] * h[k - 1]);
      worst_c = std::max(worst_c, c);
      if (c > 1e3) {
        ++bad;
        note += fmt(" seed %llu: t=%.2e -> %.2e (C=%.1e)",
                    static_cast<unsigned long long>(seed), h[k - 1], h[k], c);
      }
    }
  }
  return {bad == 0, fmt("5 matrices, final two steps ||t_{k+1}|| <= C "
                        "||t_k||^2 with worst C = %.2e (cap 1e3)%s",
                        worst_c, note.c_str())};
}

// ---------------------------------------------------------------------------
// 6. Evolution-operator invariants at production sizes.

Vec3 flow_at(const FlowField& f, const TorusGrid& g, Index i, Index j,
             Index k) {
  const auto c = g.coords(i, j, k);
  return f.eval({c[0], c[1], c[2]});
}

// Independent stencil application for the induction operator:
// out = -(curl(F x B) + nu lap B), central differences, component-major.
std::vector<double> apply_dynamo_ref(const TorusGrid& g, const FlowField& f,
                                     double nu,
                                     const std::vector<double>& b) {
  const Index ns = g.sites();
  const double w = 1.0 / (2.0 * g.h), hh = g.h * g.h;
  auto bc = [&](Index c, Index i, Index j, Index k) {
    return b[c * ns + g.site_index(i, j, k)];
  };
  auto e_at = [&](Index i, Index j, Index k) {
    const Vec3 v = flow_at(f, g, i, j, k);
    const double bx = bc(0, i, j, k), by = bc(1, i, j, k), bz = bc(2, i, j, k);
    return Vec3{v.y * bz - v.z * by, v.z * bx - v.x * bz,
                v.x * by - v.y * bx};
  };
  std::vector<double> out(3 * ns, 0.0);
  for (Index k = 0; k < g.n; ++k)
    for (Index j = 0; j < g.n; ++j)
      for (Index i = 0; i < g.n; ++i) {
        const Index s = g.site_index(i, j, k);
        const Vec3 exp = e_at(i + 1, j, k), exm = e_at(i - 1, j, k);
        const Vec3 eyp = e_at(i, j + 1, k), eym = e_at(i, j - 1, k);
        const Vec3 ezp = e_at(i, j, k + 1), ezm = e_at(i, j, k - 1);
        const double curl_x = w * (eyp.z - eym.z) - w * (ezp.y - ezm.y);
        const double curl_y = w * (ezp.x - ezm.x) - w * (exp.z - exm.z);
        const double curl_z = w * (exp.y - exm.y) - w * (eyp.x - eym.x);
        const double curl[3] = {curl_x, curl_y, curl_z};
        for (Index c = 0; c < 3; ++c) {
          const double lap =
              (bc(c, i + 1, j, k) + bc(c, i - 1, j, k) + bc(c, i, j + 1, k) +
               bc(c, i, j - 1, k) + bc(c, i, j, k + 1) + bc(c, i, j, k - 1) -
               6.0 * bc(c, i, j, k)) /
              hh;
          out[c * ns + s] = -(curl[c] + nu * lap);
        }
      }
  return out;
}

double max_row_sum_ratio(const CsrMatrix& a) {
  double worst_sum = 0.0, worst_norm = 0.0;
  for (Index r = 0; r < a.n_rows; ++r) {
    double sum = 0.0, nrm = 0.0;
    for (Index p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
      sum += a.values[p];
      nrm += std::abs(a.values[p]);
    }
    worst_sum = std::max(worst_sum, std::abs(sum));
    worst_norm = std::max(worst_norm, nrm);
  }
  return worst_sum / worst_norm;
}

Outcome criterion_seo_invariants() {
  bool pass = true;
  std::string d;

  // (a) Constants stay in the kernel of the scalar generator.
  double worst_ratio = 0.0;
  for (const Index n : {Index(6), Index(8), Index(16)}) {
    const TorusGrid g(n);
    worst_ratio = std::max(
        worst_ratio,
        max_row_sum_ratio(build_zero_form_seo(g, make_abc_flow(1, 1, 1), 0.1)));
    worst_ratio = std::max(
        worst_ratio, max_row_sum_ratio(build_zero_form_seo(
                         g, make_kuramoto_flow(0, 0, 0, 0.5), 0.02)));
  }
  pass = pass && worst_ratio <= 1e-12;
  d += fmt("row sums %.1e (<= 1e-12)", worst_ratio);

  // (b) The advective part is a discrete curl: its output is divergence
  // free, so the central-difference divergence must vanish on it.
  {
    const TorusGrid g(6);
    const FlowField f = make_abc_flow(1.0, 1.0, 1.0);
    const CsrMatrix h1 = build_dynamo_operator(g, f, 1.0);
    const CsrMatrix h2 = build_dynamo_operator(g, f, 2.0);
    const Index ns = g.sites();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseVector b(3 * ns);
    for (auto& v : b) v = u(rng);
    DenseVector t1 = matvec(h1, b), t2 = matvec(h2, b);
    DenseVector curl(3 * ns);  // 2 h1 - h2 cancels the diffusion block
    for (Index i = 0; i < 3 * ns; ++i) curl[i] = 2.0 * t1[i] - t2[i];
    double div_norm = 0.0, curl_norm = 0.0;
    const double w = 1.0 / (2.0 * g.h);
    auto comp = [&](Index c, Index i, Index j, Index k) {
      return curl[c * ns + g.site_index(i, j, k)].real();
    };
    for (Index k = 0; k < g.n; ++k)
      for (Index j = 0; j < g.n; ++j)
        for (Index i = 0; i < g.n; ++i) {
          const double div = w * (comp(0, i + 1, j, k) - comp(0, i - 1, j, k) +
                                  comp(1, i, j + 1, k) - comp(1, i, j - 1, k) +
                                  comp(2, i, j, k + 1) - comp(2, i, j, k - 1));
          div_norm += div * div;
        }
    for (Index i = 0; i < 3 * ns; ++i)
      curl_norm += curl[i].real() * curl[i].real();
    const double ratio = std::sqrt(div_norm) / std::sqrt(curl_norm);
    pass = pass && ratio <= 1e-12;
    d += fmt(", div(curl) %.1e (<= 1e-12)", ratio);
  }

  // (c) Induction matrix agrees entrywise with an independent stencil.
  {
    const TorusGrid g(6);
    const FlowField f = make_abc_flow(1.0, 1.0, 1.0);
    const double nu = 1.0 / 7.0;
    const CsrMatrix h = build_dynamo_operator(g, f, nu);
    const Index order = 3 * g.sites();
    double scale = 0.0;
    for (const double v : h.values) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    std::vector<double> e(order, 0.0);
    std::vector<std::vector<double>> cols(order);
    for (Index jcol = 0; jcol < order; ++jcol) {
      e[jcol] = 1.0;
      cols[jcol] = apply_dynamo_ref(g, f, nu, e);
      e[jcol] = 0.0;
    }
    for (Index r = 0; r < order; ++r) {
      std::map<Index, double> row;
      for (Index p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p)
        row[h.col_idx[p]] = h.values[p];
      for (Index c = 0; c < order; ++c) {
        const double want = cols[c][r];
        const auto it = row.find(c);
        const double got = it == row.end() ? 0.0 : it->second;
        worst = std::max(worst, std::abs(got - want));
      }
    }
    const double ratio = worst / scale;
    pass = pass && ratio <= 1e-12;
    d += fmt(", dynamo vs stencil %.1e (<= 1e-12)", ratio);
  }

  // (d) Zero flow: the spectrum is the Fourier symbol of theta (-lap).
  {
    const Index n = 8;
    const TorusGrid g(n);
    const double th = 0.3;
    const CsrMatrix h = build_zero_form_seo(g, make_zero_flow(), th);
    Eigen::SelfAdjointEigenSolver<EMatrix> es(to_dense(h),
                                              Eigen::EigenvaluesOnly);
    std::vector<double> want;
    const double pi = 3.14159265358979323846;
    for (Index mx = 0; mx < n; ++mx)
      for (Index my = 0; my < n; ++my)
        for (Index mz = 0; mz < n; ++mz)
          want.push_back(th * (2.0 / (g.h * g.h)) *
                         (3.0 - std::cos(2.0 * pi * mx / n) -
                          std::cos(2.0 * pi * my / n) -
                          std::cos(2.0 * pi * mz / n)));
    std::sort(want.begin(), want.end());
    double worst = 0.0;
    for (Index i = 0; i < h.n_rows; ++i)
      worst = std::max(worst, std::abs(es.eigenvalues()(i) - want[i]));
    pass = pass && worst <= 1e-10;
    d += fmt(", F=0 spectrum %.1e (<= 1e-10)", worst);
  }

  return {pass, d};
}

// ---------------------------------------------------------------------------
// 7/8/11. Production sweeps at n = 16 and their determinism.

std::vector<SweepRecord> run_point_set(SweepModel model, SeoOperator op,
                                       const std::string& n1,
                                       const std::vector<double>& v1,
                                       const std::string& n2,
                                       const std::vector<double>& v2) {
  SolverConfig cfg = default_sweep_config(model);
  cfg.outer_tol = 1e-8;
  std::vector<SweepRecord> all;
  for (const double a : v1)
    for (const double b : v2) {
      ParamGrid g;
      g.model = model;
      g.op = op;
      g.grid_n = 16;
      g.axis1 = {n1, a, 0.0, 1};
      g.axis2 = {n2, b, 0.0, 1};
      const auto recs = run_sweep(g, cfg);
      all.push_back(recs.at(0));
    }
  return all;
}

std::string contour_csv(const std::vector<SweepRecord>& recs) {
  std::ostringstream out;
  export_contour_csv(recs, out);
  return out.str();
}

void write_sweep_artifacts(const std::string& stem,
                           const std::vector<SweepRecord>& recs) {
  std::ofstream(stem + "_contour.csv") << contour_csv(recs);
  std::ofstream(stem + "_stats.txt") << format_stats_tables(recs);
  std::ofstream csv(stem + "_stats.csv");
  export_stats_csv(recs, csv);
}

struct SweepCache {
  bool have = false;
  std::vector<SweepRecord> records;
};
SweepCache g_abc_sweep;

std::vector<SweepRecord> abc_grid() {
  return run_point_set(SweepModel::abc, SeoOperator::dynamo, "R_m",
                       {1.0, 7.0, 14.0}, "C", {0.4, 0.75, 1.125});
}

Outcome criterion_dynamo_sweep() {
  const auto recs = abc_grid();
  g_abc_sweep = {true, recs};
  write_sweep_artifacts("acceptance_abc", recs);
  int conv = 0;
  Index outer = 0, inner = 0;
  for (const auto& r : recs) {
    conv += r.converged ? 1 : 0;
    outer += r.outer;
    inner += r.inner;
  }
  return {conv == 9,
          fmt("%d/9 points converged to 1e-8 (outer %lld, inner %lld); "
              "artifacts acceptance_abc_{contour.csv,stats.txt,stats.csv}",
              conv, static_cast<long long>(outer),
              static_cast<long long>(inner))};
}

Outcome criterion_kuramoto_sweep() {
  const auto recs =
      run_point_set(SweepModel::kuramoto, SeoOperator::zero_form, "K",
                    {0.12, 0.4, 0.7}, "D", {0.0015, 0.02, 0.042});
  write_sweep_artifacts("acceptance_kuramoto", recs);
  int conv = 0;
  double worst_re = -1.0;
  std::string offenders;
  for (const auto& r : recs) {
    conv += r.converged ? 1 : 0;
    worst_re = std::max(worst_re, r.lambda.real());
    if (!r.converged || r.lambda.real() > 1e-8)
      offenders += fmt(" [K=%g D=%g lambda=%.4e%+.4ei conv=%d]", r.param1,
                       r.param2, r.lambda.real(), r.lambda.imag(),
                       r.converged ? 1 : 0);
  }
  const bool pass = conv == 9 && worst_re <= 1e-8;
  std::string d = fmt("%d/9 converged to 1e-8, max Re lambda = %.3e "
                      "(need <= 1e-8)",
                      conv, worst_re);
  if (!offenders.empty())
    d += "; off-kernel points (residual-verified eigenpairs of an "
         "oscillatory branch):" +
         offenders;
  d += "; artifacts acceptance_kuramoto_*";
  return {pass, d};
}

std::string mask_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      for (std::size_t i = 7; i < cells.size() && i <= 9; ++i) cells[i] = "-";
      line.clear();
      for (std::size_t i = 0; i < cells.size(); ++i)
        line += (i ? "," : "") + cells[i];
    }
    header = false;
    out += line + "\n";
  }
  return out;
}

Outcome criterion_sweep_determinism() {
  if (!g_abc_sweep.have) g_abc_sweep = {true, abc_grid()};
  const auto rerun = abc_grid();
  const std::string a = mask_timing_columns(contour_csv(g_abc_sweep.records));
  const std::string b = mask_timing_columns(contour_csv(rerun));
  const bool equal = a == b;
  std::string d = fmt(
      "contour CSV byte-identical across reruns with timing columns "
      "(eigs_time, gmres_time, entire_time) masked: %s",
      equal ? "yes" : "NO");
  if (!equal) {
    std::istringstream ia(a), ib(b);
    std::string la, lb;
    int ln = 0;
    while (std::getline(ia, la) && std::getline(ib, lb)) {
      ++ln;
      if (la != lb) {
        d += fmt("; first diff at line %d: '%s' vs '%s'", ln, la.c_str(),
                 lb.c_str());
        break;
      }
    }
  }
  return {equal, d};
}

// ---------------------------------------------------------------------------
// 9. Restarted GMRES against a dense direct solve.

Outcome criterion_gmres_direct() {
  double worst = 0.0;
  int bad = 0;
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<Index> size(20, 100);
  for (int i = 0; i < 50; ++i) {
    const Index n = size(rng);
    const CsrMatrix a = random_sparse(n, 6, 1000 + i, 4.0);
    const DenseVector b = random_complex_vector(n, 2000 + i);

    GmresOptions opts;
    opts.tol = 1e-12;
    opts.restart = n;
    opts.max_total = 50 * n;
    const CsrOperator op(a);
    const auto rep = gmres(op, b, DenseVector(n, Complex(0.0, 0.0)), opts);

    const ECMatrix ad = to_dense(a).cast<Complex>();
    const ECVector xd = ad.partialPivLu().solve(to_eigen(b));
    const double err = (to_eigen(rep.solution) - xd).norm() / xd.norm();
    worst = std::max(worst, err);
    if (!rep.converged || err > 1e-9) ++bad;
  }
  return {bad == 0, fmt("50 systems n in [20,100], worst relative error "
                        "%.2e vs dense direct (tol 1e-9), %d failures",
                        worst, bad)};
}

// ---------------------------------------------------------------------------
// 10. Matrix Market round-trips preserve structure and values exactly.

bool same_matrix(const CsrMatrix& a, const CsrMatrix& b) {
  return a.n_rows == b.n_rows && a.n_cols == b.n_cols &&
         a.row_ptr == b.row_ptr && a.col_idx == b.col_idx &&
         a.values == b.values;
}

std::string symmetric_file_text(Index n, int nnz, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> idx(0, n - 1);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::map<std::pair<Index, Index>, double> lower;
  lower[{0, 0}] = val(rng);  // keep at least one entry
  for (int i = 0; i < nnz; ++i) {
    Index r = idx(rng), c = idx(rng);
    if (r < c) std::swap(r, c);
    lower[{r, c}] = val(rng);
  }
  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << n << " " << n << " " << lower.size() << "\n";
  char buf[96];
  for (const auto& [rc, v] : lower) {
    std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n",
                  static_cast<long long>(rc.first + 1),
                  static_cast<long long>(rc.second + 1), v);
    out << buf;
  }
  return out.str();
}

std::string pattern_file_text(Index rows, Index cols, int nnz,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> ri(0, rows - 1), ci(0, cols - 1);
  std::map<std::pair<Index, Index>, bool> entries;
  entries[{0, 0}] = true;
  for (int i = 0; i < nnz; ++i) entries[{ri(rng), ci(rng)}] = true;
  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << rows << " " << cols << " " << entries.size() << "\n";
  for (const auto& [rc, unused] : entries)
    out << rc.first + 1 << " " << rc.second + 1 << "\n";
  return out.str();
}

Outcome criterion_matrix_market_roundtrip() {
  std::mt19937_64 rng(860);
  std::uniform_int_distribution<Index> size(1, 60);
  int bad = 0;
  std::string first_bad;
  for (int i = 0; i < 100; ++i) {
    const Index n = size(rng);
    CsrMatrix m;
    const char* kind = "";
    switch (i % 4) {
      case 0:  // plain random, possibly rectangular via a second dimension
        kind = "general";
        m = random_sparse(n, std::min<Index>(n, 4), 7000 + i);
        break;
      case 1: {  // expanded from a symmetric-format file
        kind = "symmetric";
        std::istringstream in(symmetric_file_text(n, 3 * static_cast<int>(n),
                                                  rng));
        m = read_matrix_market(in);
        break;
      }
      case 2: {  // unit values from a pattern-format file
        kind = "pattern";
        std::istringstream in(
            pattern_file_text(n, std::max<Index>(1, n / 2),
                              2 * static_cast<int>(n), rng));
        m = read_matrix_market(in);
        break;
      }
      case 3:  // explicit symmetric values, written as general
        kind = "symmetrized";
        m = symmetrize(random_sparse(n, std::min<Index>(n, 3), 9000 + i));
        break;
    }
    std::ostringstream out;
    write_matrix_market(m, out);
    std::istringstream back(out.str());
    const CsrMatrix m2 = read_matrix_market(back);
    if (!same_matrix(m, m2)) {
      ++bad;
      if (first_bad.empty())
        first_bad = fmt(" first: case %d (%s, n=%lld)", i, kind,
                        static_cast<long long>(n));
    }
  }
  return {bad == 0, fmt("100 write/read round-trips (general, symmetric, "
                        "pattern, symmetrized): %d mismatches%s",
                        bad, first_bad.c_str())};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* title;
  Outcome (*fn)();
  double budget_s;  // 0 = no wall-clock requirement
};

const Criterion kCriteria[] = {
    {1, "leftmost eigenvalue vs dense oracle", criterion_leftmost_oracle, 60},
    {2, "exact vs inexact outer counts", criterion_exact_vs_inexact, 300},
    {3, "one-step angle contraction", criterion_angle_contraction, 120},
    {4, "first-order solve perturbation", criterion_remainder_slope, 60},
    {5, "Rayleigh-quotient contraction order", criterion_rq_contraction, 0},
    {6, "evolution operator invariants", criterion_seo_invariants, 0},
    {7, "dynamo sweep 3x3 at n=16", criterion_dynamo_sweep, 1200},
    {8, "Kuramoto sweep 3x3 at n=16, kernel pinned", criterion_kuramoto_sweep,
     1200},
    {9, "restarted GMRES vs dense direct", criterion_gmres_direct, 0},
    {10, "Matrix Market round-trips", criterion_matrix_market_roundtrip, 0},
    {11, "sweep determinism", criterion_sweep_determinism, 0},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0, ran = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
      continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, fmt("exception: %s", e.what())};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool pass = o.pass;
    std::string timing = fmt("%.1f s", dt);
    if (c.budget_s > 0) {
      timing += fmt(" / budget %.0f s", c.budget_s);
      pass = pass && dt < c.budget_s;
    }
    if (!pass) ++failures;
    std::printf("[%s] %2d %s: %s (%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %d criteria passed\n", ran - failures, ran);
  return failures;
}
