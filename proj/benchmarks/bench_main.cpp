#include <benchmark/benchmark.h>

#include <kband/field_transform.hpp>
#include <kband/galerkin.hpp>
#include <kband/residual.hpp>
#include <kband/scattering.hpp>

using namespace kband;

static void BM_BuildBasis(benchmark::State& state) {
  const Band b(1.0, 2.0);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto basis = build_basis(b, N);
    benchmark::DoNotOptimize(basis);
  }
}
BENCHMARK(BM_BuildBasis)->Arg(4)->Arg(10)->Arg(15);

static void BM_AssembleSystem(benchmark::State& state) {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sys = assemble_system(basis);
    benchmark::DoNotOptimize(sys);
  }
}
BENCHMARK(BM_AssembleSystem)->Arg(4)->Arg(8);

static void BM_ForwardSolve(benchmark::State& state) {
  const BumpMedium med{0.0, 0.0, 0.3, 0.5};
  const int support_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sol = solve_lippmann_schwinger(med, 1.5, support_n);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_ForwardSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_FieldEvaluation(benchmark::State& state) {
  const BumpMedium med{0.0, 0.0, 0.3, 0.5};
  const auto sol = solve_lippmann_schwinger(med, 1.5, 32);
  const SpaceGrid grid(1.0, 33);
  for (auto _ : state) {
    auto u = sample_total_field({sol}, grid);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_FieldEvaluation)->Unit(benchmark::kMillisecond);

static void BM_ComputeHN(benchmark::State& state) {
  const Band b(1.0, 2.0);
  const auto basis = build_basis(b, 8);
  const auto rule = band_rule(b, 16);
  const SpaceGrid grid(1.0, 65);
  const ManufacturedField mf = ManufacturedField::gaussian(b.k0());
  const SampledField v = mf.sample_v(grid, rule.nodes);
  for (auto _ : state) {
    auto h = compute_hN(v, basis, rule, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_ComputeHN)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ResidualNorm(benchmark::State& state) {
  const Band b(1.0, 2.0);
  const auto rule = band_rule(b, 16);
  const SpaceGrid grid(1.0, 65);
  const ManufacturedField mf = ManufacturedField::gaussian(b.k0());
  const SampledField v = mf.sample_v(grid, rule.nodes);
  const SampledField d = mf.sample_dkv(grid, rule.nodes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual_norm(v, d, rule));
  }
}
BENCHMARK(BM_ResidualNorm)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
