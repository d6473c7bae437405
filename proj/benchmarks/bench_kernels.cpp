#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "simplets/case_io.hpp"
#include "simplets/kernels.hpp"
#include "simplets/parallel.hpp"
#include "simplets/schemes.hpp"
#include "simplets/solver.hpp"

using namespace simplets;

namespace {

std::vector<double> random_values(std::size_t n, double lo, double hi) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

SchemeConfig scheme_of(int k, bool branchless = false) {
  SchemeConfig s{k / 2 ? TimeScheme::Explicit : TimeScheme::Implicit,
                 k % 2 ? SpaceScheme::Tvd : SpaceScheme::Upwind};
  s.branchless = branchless;
  return s;
}

CaseParameters bench_channel() {
  CaseParameters p;
  p.length = 40.0;
  p.spacing = 0.2;
  p.inlet_length = 5.5;
  return p;
}

void BM_VanLeer(benchmark::State& state) {
  const auto r = random_values(4096, -5.0, 5.0);
  for (auto _ : state) {
    double acc = 0.0;
    for (double x : r) acc += van_leer(x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(r.size()));
}
BENCHMARK(BM_VanLeer);

void BM_UpwindSelect(benchmark::State& state) {
  const bool branchless = state.range(0) != 0;
  const auto v = random_values(4096, -1.0, 1.0);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) acc += upwind_select(v[k - 1], v[k], v[k] - 0.1, branchless);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(v.size() - 1));
}
BENCHMARK(BM_UpwindSelect)->Arg(0)->Arg(1)->ArgName("branchless");

// One full-array Jacobi pass over a 200 x 50 channel, per scheme variant.
void BM_ReferencePass(benchmark::State& state) {
  const SchemeConfig s = scheme_of(static_cast<int>(state.range(0)));
  auto setup = build_channel_case(bench_channel(), s.is_explicit());
  const Problem& pr = setup.problem;
  FieldSet& f = setup.fields;
  const double dt = 0.01;
  f.begin_step();
  const ExplicitPlanes* planes = nullptr;
  if (s.is_explicit()) {
    compute_explicit_terms(pr, f.prev(), f.diff_old(), s, dt, f.planes());
    planes = &f.planes();
  }
  const PassInputs in = make_pass_inputs(pr, f.old(), f.diff_old(), f.prev(), planes, s, dt);
  State cur = f.old();
  Diffusivity dcur = f.diff_old();
  for (auto _ : state) {
    reference_pass(in, Loop3Order::Gpu, 2, cur, dcur);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * pr.geom.nx() * pr.geom.ny());
  state.SetLabel(scheme_name(s));
}
BENCHMARK(BM_ReferencePass)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

// Row-buffered sweep of the same pass split into subdomains.
void BM_SweepPass(benchmark::State& state) {
  const SchemeConfig s = scheme_of(1);
  auto setup = build_channel_case(bench_channel(), false);
  const Problem& pr = setup.problem;
  FieldSet& f = setup.fields;
  f.begin_step();
  const PassInputs in = make_pass_inputs(pr, f.old(), f.diff_old(), f.prev(), nullptr, s, 0.01);
  const SubdomainPlan plan =
      plan_decomposition(pr.geom, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1);
  std::vector<RowBuffers> bufs;
  for (const auto& sd : plan.parts) bufs.emplace_back(row_buffer_width(sd, plan.halo));
  State cur = f.old();
  Diffusivity dcur = f.diff_old();
  for (auto _ : state) {
    const auto views = exchange_halos(f.old(), plan);
    for (std::size_t k = 0; k < plan.parts.size(); ++k) sweep_subdomain(in, views[k], bufs[k], cur, dcur);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * pr.geom.nx() * pr.geom.ny());
}
BENCHMARK(BM_SweepPass)->Args({1, 1})->Args({2, 2})->Args({4, 2})->Unit(benchmark::kMillisecond);

// Whole time steps, including boundary fill and residuals.
void BM_TimeStep(benchmark::State& state) {
  SolverConfig c;
  c.dt = 0.01;
  c.scheme = scheme_of(0, state.range(0) != 0);
  for (auto _ : state) {
    state.PauseTiming();
    auto setup = build_channel_case(bench_channel(), false);
    Solver solver(std::move(setup.problem), c, std::move(setup.fields));
    state.ResumeTiming();
    benchmark::DoNotOptimize(solver.advance());
  }
}
BENCHMARK(BM_TimeStep)->Arg(0)->Arg(1)->ArgName("branchless")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
