#include "cfiebem/blas_runtime.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#if defined(__linux__)
#include <unistd.h>
#endif

// Present only when the BLAS is OpenBLAS.
extern "C" char* openblas_get_corename(void) __attribute__((weak));

namespace cfiebem {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string blas_core_name() {
  if (openblas_get_corename == nullptr) return "";
  const char* name = openblas_get_corename();
  return name ? name : "";
}

std::string preferred_blas_core() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512bw") && __builtin_cpu_supports("avx512vl"))
    return "SkylakeX";
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return "Haswell";
#endif
  return "";
}

void reexec_with_preferred_blas_core(char** argv) {
#if defined(__linux__)
  if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
  const std::string current = lower(blas_core_name());
  const std::string preferred = preferred_blas_core();
  if (current.empty() || preferred.empty()) return;
  // only generic fallbacks are overridden; a recognised core is left alone
  if (current != "prescott" && current != "core2" && current != "nehalem" && current != "sandybridge") return;
  if (::setenv("OPENBLAS_CORETYPE", preferred.c_str(), 1) != 0) return;
  ::execv("/proc/self/exe", argv);
  ::unsetenv("OPENBLAS_CORETYPE");
#else
  (void)argv;
#endif
}

}  // namespace cfiebem
