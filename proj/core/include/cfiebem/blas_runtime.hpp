#pragma once

#include <string>

namespace cfiebem {

/// Kernel family OpenBLAS selected at load time ("Prescott", "SkylakeX", ...),
/// or "" when the BLAS in use is not OpenBLAS.
std::string blas_core_name();

/// Best OpenBLAS kernel family for this CPU ("SkylakeX", "Haswell"), or "".
std::string preferred_blas_core();

/// OpenBLAS falls back to generic kernels on CPUs it does not recognise
/// (common on virtualised Xeons), which is several times slower. When that
/// happened and OPENBLAS_CORETYPE is unset, set it and re-execute the current
/// program (Linux only). Returns normally when nothing needs to change or the
/// re-exec failed. Call first thing in main.
void reexec_with_preferred_blas_core(char** argv);

}  // namespace cfiebem
