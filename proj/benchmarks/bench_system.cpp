#include <benchmark/benchmark.h>

#include "cfiebem/analysis.hpp"
#include "cfiebem/cfie.hpp"

using namespace cfiebem;

namespace {

CfieSystem sphere_system(int frequency) {
  auto mesh = std::make_shared<const TriangleMesh>(make_icosphere(1.0, frequency));
  return CfieSystem::assemble(mesh, Wavenumber(4.4934, 4.4934), CouplingParameter(-4.4934 * 4.4934));
}

void BM_SystemAssemble(benchmark::State& state) {
  const int f = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_system(f).size());
}
BENCHMARK(BM_SystemAssemble)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SchurApply(benchmark::State& state) {
  const CfieSystem sys = sphere_system(static_cast<int>(state.range(0)));
  const ComplexVector xi = ComplexVector::Ones(sys.size());
  for (auto _ : state) benchmark::DoNotOptimize(sys.apply(xi));
  state.counters["N"] = sys.size();
}
BENCHMARK(BM_SchurApply)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Solve(benchmark::State& state) {
  const CfieSystem sys = sphere_system(static_cast<int>(state.range(0)));
  const ComplexVector b = assemble_rhs(PlaneWave(Vec3(1, 0, 0), Vec3(0, 0, 1), 4.4934), *sys.rt0(), {});
  int its = 0;
  for (auto _ : state) its = solve(sys, b, 1e-8, 500).iterations;
  state.counters["iterations"] = its;
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PreconditionedCond(benchmark::State& state) {
  const CfieSystem sys = sphere_system(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(preconditioned_cond(sys));
  state.counters["N"] = sys.size();
}
BENCHMARK(BM_PreconditionedCond)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
