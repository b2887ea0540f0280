#include <benchmark/benchmark.h>

#include "cfiebem/operators.hpp"
#include "cfiebem/spaces.hpp"

using namespace cfiebem;

namespace {

// arg: icosphere frequency (N = 30 f^2 edges)
void BM_AssembleYukawaS(benchmark::State& state) {
  auto mesh = std::make_shared<const TriangleMesh>(make_icosphere(1.0, static_cast<int>(state.range(0))));
  const SpacePtr rt0 = build_rt0_space(mesh);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_S(cplx(0.0, 4.4934), *rt0, *rt0, {}));
  state.counters["N"] = rt0->dof_count();
}
BENCHMARK(BM_AssembleYukawaS)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AssembleGram(benchmark::State& state) {
  auto mesh = std::make_shared<const TriangleMesh>(make_icosphere(1.0, static_cast<int>(state.range(0))));
  const RefinedMesh refined = barycentric_refine(mesh);
  const SpacePtr rt0 = build_rt0_space(mesh);
  const SpacePtr bc = build_bc_space(refined);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_gram(*bc, *rt0, refined));
  state.counters["N"] = rt0->dof_count();
}
BENCHMARK(BM_AssembleGram)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
