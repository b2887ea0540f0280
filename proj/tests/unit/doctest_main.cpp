#define DOCTEST_CONFIG_IMPLEMENT
#include "cfiebem/blas_runtime.hpp"
#include "doctest.h"

int main(int argc, char** argv) {
  cfiebem::reexec_with_preferred_blas_core(argv);
  return doctest::Context(argc, argv).run();
}
