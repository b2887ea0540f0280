#include "cfiebem/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace cfiebem {
namespace {

constexpr char magic[8] = {'C', 'F', 'I', 'E', 'M', 'A', 'T', '1'};

static_assert(std::endian::native == std::endian::little, "matrix format assumes a little-endian host");

}  // namespace

void write_matrix(const std::string& path, const ComplexDenseMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_matrix: cannot open " + path);
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  out.write(magic, sizeof magic);
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  std::vector<double> row(2 * static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row[2 * j] = m(i, j).real();
      row[2 * j + 1] = m(i, j).imag();
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("write_matrix: write failed for " + path);
}

ComplexDenseMatrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_matrix: cannot open " + path);
  char head[8];
  std::int64_t dims[2];
  in.read(head, sizeof head);
  in.read(reinterpret_cast<char*>(dims), sizeof dims);
  if (!in || std::memcmp(head, magic, sizeof magic) != 0) {
    throw std::runtime_error("read_matrix: bad header in " + path);
  }
  if (dims[0] < 0 || dims[1] < 0) throw std::runtime_error("read_matrix: negative dimensions in " + path);
  ComplexDenseMatrix m(dims[0], dims[1]);
  std::vector<double> row(2 * static_cast<std::size_t>(dims[1]));
  for (std::int64_t i = 0; i < dims[0]; ++i) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(double)));
    for (std::int64_t j = 0; j < dims[1]; ++j) m(i, j) = cplx(row[2 * j], row[2 * j + 1]);
  }
  if (!in) throw std::runtime_error("read_matrix: truncated file " + path);
  return m;
}

}  // namespace cfiebem
