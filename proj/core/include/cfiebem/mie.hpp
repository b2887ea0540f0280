#pragma once

#include <vector>

#include "cfiebem/potentials.hpp"

namespace cfiebem {

/// Plane wave amplitude * x_hat * exp(i kappa z) scattered by a perfectly
/// conducting sphere centered at the origin. Expansion in vector spherical
/// wave functions with E_n = i^n (2n+1) / (n(n+1)):
///   e_s = sum_n E_n (i a_n N_e1n - b_n M_o1n),  a_n = psi_n'/xi_n',  b_n = psi_n/xi_n
/// (psi_n, xi_n the Riccati-Bessel functions of the first and third kind).
struct MieSolution {
  double kappa;
  double radius;
  double amplitude = 1.0;
  int n_terms;
  std::vector<cplx> a;  // index 1..n_terms, a[0] unused
  std::vector<cplx> b;
};

/// ceil(x + 4 x^{1/3} + 10), x = kappa * radius.
int mie_truncation(double kappa, double radius);

/// n_terms <= 0 selects mie_truncation().
MieSolution build_mie(double kappa, double radius, int n_terms = 0, double amplitude = 1.0);

/// Scattered field and curl. Points must satisfy |x| >= radius (1 - 1e-12).
std::vector<FieldSample> eval_mie(const MieSolution& sol, const std::vector<Vec3>& points);

/// The incident plane wave summed from the same series (regular functions).
std::vector<FieldSample> eval_mie_incident(const MieSolution& sol, const std::vector<Vec3>& points);

}  // namespace cfiebem
