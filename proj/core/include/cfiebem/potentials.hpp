#pragma once

#include <string>
#include <vector>

#include "cfiebem/cfie.hpp"

namespace cfiebem {

struct FieldSample {
  Vec3 point;
  CVec3 e;
  CVec3 curl_e;
};

struct PotentialOptions {
  /// Gauss order of the per-triangle rule (points are off-surface).
  int order = 5;
  /// Points closer to the surface than this fraction of the meshwidth are rejected.
  double min_distance_ratio = 0.01;
  int jobs = 1;
};

/// Scattered field e = i eta SL(phi) + DL(psi) and its curl
/// curl e = i eta DL(phi) + kappa^2 SL(psi), with the physical wavenumber kappa.
/// SL(u) = int G u + kappa^{-2} grad int G div u,  DL(u) = curl int G u.
/// phi and psi must live on the same RT0 space. Throws std::invalid_argument
/// for interior points or points too close to the surface.
std::vector<FieldSample> eval_scattered(const SurfaceDensity& xi, const SurfaceDensity& phi,
                                        const SurfaceDensity& psi, double kappa, double eta,
                                        const std::vector<Vec3>& points, const PotentialOptions& opt = {});

std::vector<FieldSample> eval_scattered(const CfieSolution& sol, const CfieSystem& sys,
                                        const std::vector<Vec3>& points, const PotentialOptions& opt = {});

std::vector<FieldSample> eval_incident(const PlaneWave& wave, const std::vector<Vec3>& points);

/// Solid-angle winding number of a closed surface around x (1 inside, 0 outside).
double winding_number(const TriangleMesh& mesh, const Vec3& x);

/// Euclidean distance from x to triangle t.
double point_triangle_distance(const TriangleMesh& mesh, int t, const Vec3& x);

/// CSV with header x,y,z,Re(ex),Im(ex),...,Re(curl_ez),Im(curl_ez).
void write_field_csv(const std::vector<FieldSample>& samples, const std::string& path);

}  // namespace cfiebem
