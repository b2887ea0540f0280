#include "cfiebem/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfiebem {

std::vector<double> spherical_bessel_j(int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("spherical_bessel_j: nmax < 0");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("spherical_bessel_j: x must be positive");
  std::vector<double> j(nmax + 1);
  const double j0 = std::sin(x) / x;
  if (x >= nmax) {
    j[0] = j0;
    if (nmax >= 1) j[1] = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int n = 1; n < nmax; ++n) j[n + 1] = (2 * n + 1) / x * j[n] - j[n - 1];
    return j;
  }
  const int start = nmax + 16 + static_cast<int>(std::sqrt(40.0 * (nmax + 1)));
  double up = 0.0, cur = 1e-300;
  for (int n = start; n > 0; --n) {
    const double down = (2 * n + 1) / x * cur - up;
    up = cur;
    cur = down;
    if (n - 1 <= nmax) j[n - 1] = cur;
    if (std::abs(cur) > 1e250) {  // rescale to keep the ratios
      cur *= 1e-250;
      up *= 1e-250;
      for (int m = n - 1; m <= nmax; ++m) j[m] *= 1e-250;
    }
  }
  // Normalize against whichever of j_0, j_1 is farther from a zero.
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double scale = (std::abs(j0) >= std::abs(j1) || nmax == 0) ? j0 / j[0] : j1 / j[1];
  for (double& v : j) v *= scale;
  return j;
}

std::vector<double> spherical_bessel_y(int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("spherical_bessel_y: nmax < 0");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("spherical_bessel_y: x must be positive");
  std::vector<double> y(nmax + 1);
  y[0] = -std::cos(x) / x;
  if (nmax >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < nmax; ++n) {
    y[n + 1] = (2 * n + 1) / x * y[n] - y[n - 1];
    if (!std::isfinite(y[n + 1]))
      throw std::overflow_error("spherical_bessel_y: overflow at order " + std::to_string(n + 1) +
                                " for x = " + std::to_string(x));
  }
  return y;
}

std::vector<cplx> spherical_hankel1(int nmax, double x) {
  const std::vector<double> j = spherical_bessel_j(nmax, x);
  const std::vector<double> y = spherical_bessel_y(nmax, x);
  std::vector<cplx> h(nmax + 1);
  for (int n = 0; n <= nmax; ++n) h[n] = cplx(j[n], y[n]);
  return h;
}

}  // namespace cfiebem
