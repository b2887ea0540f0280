#pragma once

#include <string>

#include "cfiebem/types.hpp"

namespace cfiebem {

/// Binary layout: 8 magic bytes "CFIEMAT1", int64 rows, int64 cols, then
/// row-major interleaved (re, im) doubles. Little-endian throughout.
void write_matrix(const std::string& path, const ComplexDenseMatrix& m);
ComplexDenseMatrix read_matrix(const std::string& path);

}  // namespace cfiebem
