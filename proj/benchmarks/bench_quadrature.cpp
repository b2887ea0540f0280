#include <benchmark/benchmark.h>

#include <cmath>

#include "cfiebem/kernels.hpp"
#include "cfiebem/quadrature.hpp"

using namespace cfiebem;

namespace {

const std::array<Vec3, 3> t1{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.3, 0.8, 0)};
const std::array<Vec3, 3> t_edge{Vec3(1, 0, 0), Vec3(0, 0, 0), Vec3(0.4, -0.7, 0.2)};
const std::array<Vec3, 3> t_vertex{Vec3(0, 0, 0), Vec3(-1, 0.1, 0), Vec3(-0.2, -0.9, 0.3)};

// identical, edge-adjacent and vertex-adjacent pairs for the Helmholtz kernel
void BM_SingularPair(benchmark::State& state) {
  const int which = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const auto& t2 = which == 0 ? t1 : which == 1 ? t_edge : t_vertex;
  const PairClassification pc = classify_pair(t1, t2);
  const PairKernel k = [](const Vec3& x, const Vec3& y) { return green(cplx(2.0, 0.0), x, y); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_pair(k, t1, t2, pc, order));
  state.SetLabel(to_string(pc.kind));
}
BENCHMARK(BM_SingularPair)->ArgsProduct({{0, 1, 2}, {4, 8}});

void BM_GreenDifference(benchmark::State& state) {
  const Vec3 x(0.1, 0.2, 0.3);
  Vec3 y(0.1, 0.2, 0.3 + 1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(green_difference(4.4934, 4.4934, x, y));
    y.z() += 1e-12;
  }
}
BENCHMARK(BM_GreenDifference);

}  // namespace
