#pragma once

#include <vector>

#include "cfiebem/types.hpp"

namespace cfiebem {

/// j_0..j_nmax at x > 0. Downward (Miller) recurrence normalized by j_0 when
/// x < nmax, upward otherwise.
std::vector<double> spherical_bessel_j(int nmax, double x);

/// y_0..y_nmax at x > 0 by upward recurrence. Throws std::overflow_error
/// when the recurrence leaves the double range.
std::vector<double> spherical_bessel_y(int nmax, double x);

/// h^(1)_n = j_n + i y_n.
std::vector<cplx> spherical_hankel1(int nmax, double x);

/// (x z_n(x))' / x = z_{n-1} - n z_n / x for n >= 1 from the table z_0..z_nmax.
template <class T>
std::vector<T> riccati_derivative_over_x(const std::vector<T>& z, double x) {
  std::vector<T> d(z.size(), T(0));
  for (std::size_t n = 1; n < z.size(); ++n) d[n] = z[n - 1] - static_cast<double>(n) * z[n] / x;
  return d;
}

}  // namespace cfiebem
