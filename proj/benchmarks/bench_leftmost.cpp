// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the kernels the solver spends its time in: sparse
// matvec, the shifted GMRES inner solve, operator assembly, and the 2-D
// Rayleigh-Ritz extraction. Grid sizes are chosen so a full run stays under
// a minute on one core.

#include <benchmark/benchmark.h>

#include <complex>

#include "leftmost/eigsolve.hpp"
#include "leftmost/krylov.hpp"
#include "leftmost/operators.hpp"
#include "leftmost/seo.hpp"

namespace {

using namespace leftmost;

CsrMatrix advection_diffusion(Index n) {
  return build_zero_form_seo(TorusGrid(n), make_abc_flow(1.0, 1.0, 1.0), 0.05);
}

void BM_matvec_zero_form(benchmark::State& state) {
  const CsrMatrix a = advection_diffusion(state.range(0));
  const DenseVector x = seeded_unit_vector(a.n_rows, 3);
  DenseVector y(x.size());
  for (auto _ : state) {
    matvec(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * a.nnz());
}
BENCHMARK(BM_matvec_zero_form)->Arg(8)->Arg(12)->Arg(16);

void BM_matvec_dynamo(benchmark::State& state) {
  const CsrMatrix a = build_dynamo_operator(
      TorusGrid(state.range(0)), make_abc_flow(1.0, 1.0, 1.0), 1.0 / 7.0);
  const DenseVector x = seeded_unit_vector(a.n_rows, 3);
  DenseVector y(x.size());
  for (auto _ : state) {
    matvec(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * a.nnz());
}
BENCHMARK(BM_matvec_dynamo)->Arg(6)->Arg(10);

void BM_build_zero_form(benchmark::State& state) {
  const TorusGrid grid(state.range(0));
  const FlowField flow = make_abc_flow(1.0, 1.0, 1.0);
  for (auto _ : state) {
    CsrMatrix a = build_zero_form_seo(grid, flow, 0.05);
    benchmark::DoNotOptimize(a.values.data());
  }
}
BENCHMARK(BM_build_zero_form)->Arg(8)->Arg(16);

void BM_build_dynamo(benchmark::State& state) {
  const TorusGrid grid(state.range(0));
  const FlowField flow = make_abc_flow(1.0, 1.0, 1.0);
  for (auto _ : state) {
    CsrMatrix a = build_dynamo_operator(grid, flow, 1.0 / 7.0);
    benchmark::DoNotOptimize(a.values.data());
  }
}
BENCHMARK(BM_build_dynamo)->Arg(6)->Arg(10);

// The spectrum of the advection-diffusion generator sits in the right half
// plane, so the shift -1 keeps the system uniformly nonsingular and the
// benchmark measures steady-state GMRES throughput, not a near-breakdown.
void BM_gmres_shifted(benchmark::State& state) {
  const CsrMatrix a = advection_diffusion(state.range(0));
  const ShiftedOperator op(a, Complex{-1.0, 0.0});
  const DenseVector b = seeded_unit_vector(a.n_rows, 5);
  const DenseVector x0(b.size(), Complex{0.0, 0.0});
  GmresOptions opts;
  opts.tol = 1e-8;
  Index inner = 0;
  for (auto _ : state) {
    GmresReport rep = gmres(op, b, x0, opts);
    inner += rep.inner_iterations;
    benchmark::DoNotOptimize(rep.solution.data());
  }
  state.counters["krylov_vectors"] =
      benchmark::Counter(static_cast<double>(inner),
                         benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_gmres_shifted)->Arg(8)->Arg(12);

void BM_ritz_2d(benchmark::State& state) {
  const CsrMatrix a = advection_diffusion(state.range(0));
  const DenseVector x = seeded_unit_vector(a.n_rows, 3);
  const DenseVector y = matvec(a, x);
  for (auto _ : state) {
    auto pair = ritz_2d(a, x, y, Complex{0.0, 0.0});
    benchmark::DoNotOptimize(&pair);
  }
}
BENCHMARK(BM_ritz_2d)->Arg(12)->Arg(16);

void BM_leftmost_estimate(benchmark::State& state) {
  const CsrMatrix a = advection_diffusion(8);
  for (auto _ : state) {
    LeftmostEstimate est = leftmost_estimate(a, 40, 1e-3, 100, 7);
    benchmark::DoNotOptimize(&est);
  }
}
BENCHMARK(BM_leftmost_estimate);

}  // namespace

BENCHMARK_MAIN();
