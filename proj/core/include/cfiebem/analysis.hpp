#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cfiebem/cfie.hpp"
#include "cfiebem/potentials.hpp"

namespace cfiebem {

/// Eigenvalues of a dense square matrix (LAPACK zgeev, no eigenvectors).
std::vector<cplx> eigenvalues(const ComplexDenseMatrix& a);

/// |lambda|_max / |lambda|_min; infinity when |lambda|_min < 1e-300.
double condition_number(const ComplexDenseMatrix& a);

/// condition_number(G^{-T} L).
double preconditioned_cond(const CfieSystem& sys);

/// (1/N) sum_i (|e_h - e|^2 + |curl e_h - curl e|^2)^{1/2}
double avg_pointwise_error(const std::vector<FieldSample>& numeric, const std::vector<FieldSample>& exact);

/// Fibonacci lattice on the sphere of the given radius.
std::vector<Vec3> eval_points_sphere(int n, double radius);

enum class Geometry { sphere, cube };

Geometry parse_geometry(const std::string& name);
std::string to_string(Geometry g);

/// Interior Dirichlet-Maxwell resonances. Sphere: tabulated for the unit
/// sphere. Cube (unit edge): pi sqrt(l^2+m^2+n^2), at most one index zero,
/// sorted and deduplicated, up to kappa_max.
std::vector<double> resonance_table(Geometry g, double kappa_max = 10.0);

struct SweepRecord {
  std::string geom;
  double h = 0;
  double kappa = 0;
  double kappa_prime = 0;
  double eta = 0;
  double cond_cfie = 0;
  double cond_efie = 0;
  int iters_cfie = 0;
  int iters_efie = 0;
  std::optional<double> err_h;
};

inline constexpr const char* sweep_csv_header =
    "geom,h,kappa,kappa_prime,eta,cond_cfie,cond_efie,iters_cfie,iters_efie,err_h";

/// One CSV row without newline; missing values are left empty.
std::string to_csv_row(const SweepRecord& r);
void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& os);

}  // namespace cfiebem
