#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cfiebem {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

using ComplexDenseMatrix = Eigen::MatrixXcd;
using RealDenseMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

/// Bilinear cross product; Eigen's cross() conjugates complex results.
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return CVec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

}  // namespace cfiebem
