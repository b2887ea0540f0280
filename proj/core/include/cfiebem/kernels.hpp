#pragma once

#include <cmath>

#include "cfiebem/types.hpp"

namespace cfiebem {

/// Physical wavenumber kappa and the imaginary-axis parameter kappa_prime.
struct Wavenumber {
  double kappa;
  double kappa_prime;

  Wavenumber(double kappa, double kappa_prime);
};

/// Nonzero real coupling weight of the combined field ansatz.
struct CouplingParameter {
  double eta;

  explicit CouplingParameter(double eta);
};

/// exp(i sigma r) / (4 pi r). Throws std::domain_error when x == y.
cplx green(cplx sigma, const Vec3& x, const Vec3& y);

/// grad_x of green(): G (i sigma - 1/r) (x - y) / r.
CVec3 green_gradient_x(cplx sigma, const Vec3& x, const Vec3& y);

/// G_kappa - G_{i kappa_prime}, smooth at x == y with limit (i kappa + kappa_prime) / (4 pi).
cplx green_difference(double kappa, double kappa_prime, const Vec3& x, const Vec3& y);

/// grad_x of green_difference(); zero at x == y.
CVec3 green_difference_gradient_x(double kappa, double kappa_prime, const Vec3& x, const Vec3& y);

// Radial forms used by assembly. value(r) is the kernel; grad_factor(r) is g
// with grad_x K = g (x - y).

struct YukawaRadial {
  double kappa_prime;

  [[nodiscard]] double value(double r) const { return std::exp(-kappa_prime * r) / (4.0 * pi * r); }
  [[nodiscard]] double grad_factor(double r) const {
    return -std::exp(-kappa_prime * r) * (kappa_prime * r + 1.0) / (4.0 * pi * r * r * r);
  }
};

struct HelmholtzRadial {
  cplx sigma;

  [[nodiscard]] cplx value(double r) const { return std::exp(I * sigma * r) / (4.0 * pi * r); }
  [[nodiscard]] cplx grad_factor(double r) const {
    return std::exp(I * sigma * r) * (I * sigma * r - 1.0) / (4.0 * pi * r * r * r);
  }
};

struct DifferenceRadial {
  double kappa;
  double kappa_prime;

  [[nodiscard]] cplx value(double r) const;
  [[nodiscard]] cplx grad_factor(double r) const;
};

}  // namespace cfiebem
