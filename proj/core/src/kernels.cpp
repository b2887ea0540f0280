#include "cfiebem/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfiebem {
namespace {

constexpr double taylor_threshold = 1e-6;

double distance_or_throw(const Vec3& x, const Vec3& y) {
  const double r = (x - y).norm();
  if (!(r > 0.0)) throw std::domain_error("kernel evaluated at coincident points");
  return r;
}

// e^z (z - 1) + 1 without cancellation
cplx f_series(cplx z) {
  if (std::abs(z) < 0.1) {
    cplx term = z * z / 2.0;  // z^n / n!
    cplx sum = term;
    for (int n = 3; n < 16; ++n) {
      term *= z / static_cast<double>(n);
      sum += static_cast<double>(n - 1) * term;
    }
    return sum;
  }
  return std::exp(z) * (z - 1.0) + 1.0;
}

}  // namespace

Wavenumber::Wavenumber(double k, double kp) : kappa(k), kappa_prime(kp) {
  if (!(k > 0.0) || !(kp > 0.0) || !std::isfinite(k) || !std::isfinite(kp)) {
    throw std::invalid_argument("Wavenumber: kappa and kappa_prime must be positive and finite");
  }
}

CouplingParameter::CouplingParameter(double e) : eta(e) {
  if (e == 0.0 || !std::isfinite(e)) throw std::invalid_argument("CouplingParameter: eta must be nonzero");
}

cplx green(cplx sigma, const Vec3& x, const Vec3& y) {
  return HelmholtzRadial{sigma}.value(distance_or_throw(x, y));
}

CVec3 green_gradient_x(cplx sigma, const Vec3& x, const Vec3& y) {
  const double r = distance_or_throw(x, y);
  return HelmholtzRadial{sigma}.grad_factor(r) * (x - y).cast<cplx>();
}

cplx DifferenceRadial::value(double r) const {
  const double scale = std::max(kappa, kappa_prime);
  if (r * scale < taylor_threshold) {
    const double k2 = kappa * kappa, kp2 = kappa_prime * kappa_prime;
    return (cplx(kappa_prime, kappa) - 0.5 * (k2 + kp2) * r +
            cplx(kp2 * kappa_prime, -k2 * kappa) * (r * r / 6.0)) /
           (4.0 * pi);
  }
  // e^{i k r} - 1 = -2 sin^2(k r / 2) + i sin(k r); both differences are O(r)
  const double s = std::sin(0.5 * kappa * r);
  const cplx a(-2.0 * s * s, std::sin(kappa * r));
  return (a - std::expm1(-kappa_prime * r)) / (4.0 * pi * r);
}

cplx DifferenceRadial::grad_factor(double r) const {
  if (r == 0.0) return 0.0;
  return (f_series(cplx(0.0, kappa * r)) - f_series(cplx(-kappa_prime * r, 0.0))) / (4.0 * pi * r * r * r);
}

cplx green_difference(double kappa, double kappa_prime, const Vec3& x, const Vec3& y) {
  return DifferenceRadial{kappa, kappa_prime}.value((x - y).norm());
}

CVec3 green_difference_gradient_x(double kappa, double kappa_prime, const Vec3& x, const Vec3& y) {
  return DifferenceRadial{kappa, kappa_prime}.grad_factor((x - y).norm()) * (x - y).cast<cplx>();
}

}  // namespace cfiebem
