#include <benchmark/benchmark.h>

#include <vector>

#include "condensate/cutoff.hpp"
#include "condensate/gp.hpp"
#include "condensate/kernel_integrals.hpp"
#include "condensate/pair_bounds.hpp"
#include "condensate/potentials.hpp"
#include "condensate/scattering.hpp"
#include "condensate/transform.hpp"

using namespace condensate;

static void BM_ZeroEnergySolve(benchmark::State& state) {
  const Potential v = scale(Potential::soft_sphere(2.0, 1.0), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_zero_energy(v).a0_asym);
}
BENCHMARK(BM_ZeroEnergySolve)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_TransformBuild(benchmark::State& state) {
  const Potential v = Potential::gaussian(1.0, 1.0);
  TransformSpec spec;
  spec.k_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_transform(v, spec).completeness_defect());
}
BENCHMARK(BM_TransformBuild)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_GPStep(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int points = dim == 1 ? 256 : dim == 2 ? 64 : 32;
  Field f(std::vector<int>(dim, points), std::vector<double>(dim, 20.0));
  f.fill([](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return cplx(std::exp(-r2 / 8.0), 0.0);
  });
  f.normalize();
  GPConfig cfg;
  cfg.coupling = 1.0;
  cfg.dt = 1e-3;
  const GPSolver solver(f, cfg);
  for (auto _ : state) {
    solver.step(f);
    benchmark::DoNotOptimize(f.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_GPStep)->Arg(1)->Arg(2)->Arg(3);

static void BM_CutoffEval(benchmark::State& state) {
  const CutoffConfig cfg = default_cutoff_config(static_cast<int>(state.range(0)), 2, 1);
  const auto x = sample_configuration(cfg, 7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(theta_eval(cfg, x).Theta);
}
BENCHMARK(BM_CutoffEval)->Arg(10)->Arg(40);

static void BM_KernelIntegral(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? KernelKind::two_body_form : KernelKind::half_power_resolvent;
  for (auto _ : state) benchmark::DoNotOptimize(kernel_integral(kind, {0.0, 0.0, 5.0}));
}
BENCHMARK(BM_KernelIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_PairMatrixElement(benchmark::State& state) {
  const Potential v = Potential::soft_sphere(2.0, 1.0);
  const auto [phi, psi] = reference_pair_states();
  for (auto _ : state) benchmark::DoNotOptimize(pair_matrix_element(v, phi, psi));
}
BENCHMARK(BM_PairMatrixElement)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
