// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leftmost/eigsolve.hpp"
#include "leftmost/matrix_market.hpp"
#include "leftmost/seo.hpp"
#include "leftmost/sweep.hpp"
#include "sweep_config.hpp"
#include "util.hpp"

namespace leftmost::cli {

namespace {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex z) {
  std::string s = fmt_real(z.real());
  if (z.imag() != 0.0) {
    s += z.imag() < 0.0 ? " - " : " + ";
    s += fmt_real(std::abs(z.imag()));
    s += "i";
  }
  return s;
}

long long ll(Index v) { return static_cast<long long>(v); }

// Every command funnels through here so the exit-code contract lives in one
// place: numerical breakdown beats the generic input/usage failure.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const SingularShiftError& e) {
    log_error(e.what());
    return kNumericalFailure;
  } catch (const std::exception& e) {
    log_error(e.what());
    return kInputError;
  }
}

CsrMatrix load_matrix(const std::string& path) {
  try {
    return read_matrix_market(path);
  } catch (const MatrixMarketError& e) {
    // Prefix the file so errors from multi-file commands stay attributable.
    throw std::runtime_error(path + ": " + e.what());
  }
}

CsrMatrix require_square(CsrMatrix a, const std::string& path) {
  if (a.n_rows != a.n_cols)
    throw std::runtime_error(path + ": matrix is " + std::to_string(a.n_rows) +
                             " x " + std::to_string(a.n_cols) +
                             ", eigenvalue targets need a square one");
  return a;
}

CsrMatrix negated(const CsrMatrix& a) {
  CsrMatrix m = a;
  for (auto& v : m.values) v = -v;
  return m;
}

ShiftPolicy parse_policy(const std::string& name) {
  if (name == "fixed") return ShiftPolicy::fixed;
  if (name == "rq") return ShiftPolicy::rayleigh_quotient;
  if (name == "renew") return ShiftPolicy::renew_on_slowdown;
  throw std::runtime_error("unknown shift policy `" + name +
                           "` (expected fixed, rq, or renew)");
}

void report_result(const EigResult& r, Complex lambda) {
  std::printf("lambda = %s\n", fmt_complex(lambda).c_str());
  std::printf("residual = %s\n", fmt_real(r.residual_norm).c_str());
  std::printf("outer = %lld\n", ll(r.outer_iterations));
  std::printf("inner = %lld\n", ll(r.inner_iterations_total));
  std::printf("converged = %s\n", r.converged ? "yes" : "no");
  std::printf("time = %.3f s\n", r.wall_time);
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
  return guarded([&]() -> int {
    const CsrMatrix a = require_square(load_matrix(args.matrix_path),
                                       args.matrix_path);
    SolverConfig cfg;
    cfg.inner_tol = args.inner_tol;
    cfg.outer_tol = args.outer_tol;
    cfg.max_outer = args.max_outer;
    cfg.gmres_restart = args.gmres_restart;
    cfg.gmres_max_total = args.gmres_max_total;
    cfg.shift_policy = parse_policy(args.shift_policy);
    cfg.slowdown_factor = args.slowdown;
    cfg.seed = args.seed;

    Complex sigma;
    DenseVector x1;
    if (args.have_sigma) {
      sigma = Complex{args.sigma, 0.0};
      x1 = seeded_unit_vector(a.n_rows, args.seed);
    } else {
      const LeftmostEstimate est =
          leftmost_estimate(a, 60, 1e-4, 200, args.seed);
      if (!est.converged)
        log_info("bootstrap hit its restart cap; refining the best pair found");
      std::printf("bootstrap: sigma0 = %s, residual = %s, restarts = %lld\n",
                  fmt_complex(est.sigma0).c_str(), fmt_real(est.residual).c_str(),
                  ll(est.restarts));
      sigma = est.sigma0;
      x1 = est.x0;
    }

    const EigResult r = iipm(a, sigma, x1, cfg);
    report_result(r, r.lambda);
    if (!r.converged) {
      log_error("did not reach outer tolerance " + fmt_real(args.outer_tol) +
                " within " + std::to_string(args.max_outer) +
                " outer iterations");
      return kNotConverged;
    }
    return kOk;
  });
}

int cmd_sweep(const SweepArgs& args) {
  return guarded([&]() -> int {
    std::ifstream in(args.config_path);
    if (!in) throw std::runtime_error("cannot open " + args.config_path);
    SweepRunConfig cfg;
    std::vector<std::string> errors;
    if (!parse_sweep_config(in, cfg, errors)) {
      for (const auto& e : errors) log_error(args.config_path + ": " + e);
      return kInputError;
    }
    if (args.parallel > 0) cfg.options.workers = args.parallel;

    namespace fs = std::filesystem;
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    if (!args.force && fs::directory_iterator(dir) != fs::directory_iterator{}) {
      log_error(args.out_dir +
                " is not empty; pass --force to overwrite its outputs");
      return kInputError;
    }

    // The manifest lands before the run starts, so an interrupted sweep still
    // leaves a reproducible record of what was attempted.
    const fs::path manifest = dir / "manifest.txt";
    atomic_write_file(manifest.string(), render_manifest(cfg));
    std::printf("wrote %s\n", manifest.string().c_str());

    const std::vector<SweepRecord> records =
        run_sweep(cfg.grid, cfg.solver, cfg.options);

    std::ostringstream contour;
    export_contour_csv(records, contour);
    atomic_write_file((dir / "contour.csv").string(), contour.str());
    atomic_write_file((dir / "stats.txt").string(),
                      format_stats_tables(records));
    std::ostringstream stats;
    export_stats_csv(records, stats);
    atomic_write_file((dir / "stats.csv").string(), stats.str());
    std::printf("wrote %s\n", (dir / "contour.csv").string().c_str());
    std::printf("wrote %s\n", (dir / "stats.txt").string().c_str());
    std::printf("wrote %s\n", (dir / "stats.csv").string().c_str());

    Index converged = 0;
    double wall = 0.0;
    for (const auto& r : records) {
      converged += r.converged ? 1 : 0;
      wall += r.entire_time;
    }
    std::printf("points = %zu, converged = %lld, wall = %.3f s\n",
                records.size(), ll(converged), wall);
    if (converged != static_cast<Index>(records.size())) {
      log_error(std::to_string(records.size() - converged) + " of " +
                std::to_string(records.size()) + " points did not converge");
      return kNotConverged;
    }
    return kOk;
  });
}

int cmd_build(const BuildArgs& args) {
  return guarded([&]() -> int {
    std::vector<std::string> errors;

    const bool abc = args.model == "abc";
    if (!abc && args.model != "kuramoto")
      errors.push_back("model: expected abc or kuramoto, got `" + args.model +
                       "`");
    const bool dynamo = args.op == "dynamo";
    if (!dynamo && args.op != "zero-form" && args.op != "zero_form")
      errors.push_back("operator: expected dynamo or zero-form, got `" +
                       args.op + "`");
    if (args.grid_n < 3)
      errors.push_back("grid-n: must be at least 3, got " +
                       std::to_string(args.grid_n));

    // Flow parameters with their defaults; --param entries must name one of
    // these (Theta doubles as the zero-form noise intensity D).
    std::map<std::string, double> params;
    if (abc) {
      params = {{"A", 1.0}, {"B", 1.0}, {"C", 1.0}};
    } else {
      params = {{"K", 0.5}, {"omega_x", 0.0}, {"omega_y", 0.0},
                {"omega_z", 0.0}};
    }
    if (dynamo) {
      params["R_m"] = 1.0;
    } else {
      params["D"] = 0.02;
    }

    for (const std::string& spec : args.params) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        errors.push_back("--param: expected NAME=VALUE, got `" + spec + "`");
        continue;
      }
      std::string name = spec.substr(0, eq);
      if (!dynamo && name == "Theta") name = "D";
      const auto it = params.find(name);
      if (it == params.end()) {
        std::string allowed;
        for (const auto& kv : params)
          allowed += (allowed.empty() ? "" : ", ") + kv.first;
        errors.push_back("--param: unknown parameter `" + name +
                         "` (allowed: " + allowed + ")");
        continue;
      }
      try {
        std::size_t pos = 0;
        it->second = std::stod(spec.substr(eq + 1), &pos);
        if (pos != spec.size() - eq - 1) throw std::invalid_argument(spec);
      } catch (const std::exception&) {
        errors.push_back("--param: not a number in `" + spec + "`");
      }
    }

    if (errors.empty() && dynamo && params["R_m"] <= 0.0)
      errors.push_back("--param: R_m must be positive");
    if (errors.empty() && !dynamo && params["D"] <= 0.0)
      errors.push_back("--param: D must be positive");
    if (!errors.empty()) {
      for (const auto& e : errors) log_error(e);
      return kInputError;
    }

    SeoMatrixSpec spec;
    spec.model = args.model;
    spec.grid_n = args.grid_n;
    spec.op = dynamo ? SeoOperator::dynamo : SeoOperator::zero_form;
    spec.diffusion = dynamo ? 1.0 / params["R_m"] : params["D"];
    spec.flow = abc ? make_abc_flow(params["A"], params["B"], params["C"])
                    : make_kuramoto_flow(params["omega_x"], params["omega_y"],
                                         params["omega_z"], params["K"]);

    const CsrMatrix a = build_seo(spec);
    std::ostringstream body;
    write_matrix_market(a, body);
    atomic_write_file(args.out_path, body.str());
    std::printf("wrote %s: order %lld, nnz %lld (%s %s, n = %lld)\n",
                args.out_path.c_str(), ll(a.n_rows), ll(a.nnz()),
                args.model.c_str(), dynamo ? "dynamo" : "zero-form",
                ll(args.grid_n));
    return kOk;
  });
}

int cmd_convert(const ConvertArgs& args) {
  return guarded([&]() -> int {
    CsrMatrix a = load_matrix(args.in_path);
    if (args.symmetrize) a = symmetrize(a);
    std::ostringstream body;
    write_matrix_market(a, body);
    atomic_write_file(args.out_path, body.str());
    std::printf("wrote %s: order %lld x %lld, nnz %lld%s\n",
                args.out_path.c_str(), ll(a.n_rows), ll(a.n_cols), ll(a.nnz()),
                args.symmetrize ? " (symmetrized)" : "");
    return kOk;
  });
}

int cmd_bench(const BenchArgs& args) {
  return guarded([&]() -> int {
    const CsrMatrix a = require_square(load_matrix(args.matrix_path),
                                       args.matrix_path);

    // One random probe of A - A^T; cheap, and enough to flag a matrix whose
    // sa/la labels will not mean what a symmetric-spectrum reading expects.
    {
      const CsrMatrix at = transpose(a);
      const DenseVector x = seeded_unit_vector(a.n_rows, 99);
      DenseVector d = matvec(a, x);
      const DenseVector y = matvec(at, x);
      axpy(Complex{-1.0, 0.0}, y, d);
      if (norm2(d) > 1e-12 * (frobenius_norm(a) + 1.0))
        log_info(
            "input is not symmetric; sa and la are the leftmost eigenvalues "
            "of A and -A");
    }

    SolverConfig base;
    base.outer_tol = args.outer_tol;
    base.max_outer = args.max_outer;
    base.seed = args.seed;

    struct BenchRun {
      const char* target;
      const char* mode;
      EigResult r;
      Complex lambda;
    };
    std::vector<BenchRun> runs;

    auto run_target = [&](const char* target, const CsrMatrix& m, bool flip) {
      // Bootstrap once per target; the handoff shift backs away from the
      // Ritz value by the handoff residual, since the Ritz value converges
      // quadratically and can already sit within machine distance of the
      // eigenvalue while the vector is still coarse. A fixed-shift exact
      // solve started exactly there would face a singular system.
      const LeftmostEstimate est =
          leftmost_estimate(m, 60, 1e-4, 200, args.seed);
      const double offset =
          std::max(est.residual, 1e-6 * (1.0 + std::abs(est.sigma0)));
      const Complex sigma = est.sigma0 - Complex{offset, 0.0};
      if (args.mode != "inexact") {
        EigResult r = exact_ipm(m, sigma, est.x0, base);
        const Complex lam = flip ? -r.lambda : r.lambda;
        runs.push_back({target, "exact", std::move(r), lam});
      }
      if (args.mode != "exact") {
        SolverConfig cfg = base;
        cfg.inner_tol = 1e-2;
        cfg.gmres_restart = 200;
        EigResult r = iipm(m, sigma, est.x0, cfg);
        const Complex lam = flip ? -r.lambda : r.lambda;
        runs.push_back({target, "inexact", std::move(r), lam});
      }
    };
    run_target("sa", a, false);
    const CsrMatrix na = negated(a);
    run_target("la", na, true);

    std::ostringstream csv;
    csv << "target,mode,k,residual\n";
    for (const auto& run : runs) {
      const auto& hist = run.r.outer_residual_history;
      for (std::size_t k = 0; k < hist.size(); ++k)
        csv << run.target << ',' << run.mode << ',' << k + 1 << ','
            << fmt_real(hist[k]) << '\n';
    }
    atomic_write_file(args.out_path, csv.str());

    bool all_converged = true;
    for (const auto& run : runs) {
      std::printf(
          "%s %s: lambda = %s, outer = %lld, inner = %lld, residual = %s, "
          "converged = %s\n",
          run.target, run.mode, fmt_complex(run.lambda).c_str(),
          ll(run.r.outer_iterations), ll(run.r.inner_iterations_total),
          fmt_real(run.r.residual_norm).c_str(),
          run.r.converged ? "yes" : "no");
      all_converged = all_converged && run.r.converged;
    }
    std::printf("wrote %s\n", args.out_path.c_str());
    if (!all_converged) {
      log_error("at least one run did not converge");
      return kNotConverged;
    }
    return kOk;
  });
}

}  // namespace leftmost::cli
