#include <benchmark/benchmark.h>

#include "cfiebem/blas_runtime.hpp"

int main(int argc, char** argv) {
  cfiebem::reexec_with_preferred_blas_core(argv);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::AddCustomContext("blas_core", cfiebem::blas_core_name());
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
