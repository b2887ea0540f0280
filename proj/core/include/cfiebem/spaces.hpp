#pragma once

#include <memory>
#include <vector>

#include "cfiebem/mesh.hpp"
#include "cfiebem/types.hpp"

namespace cfiebem {

enum class SpaceKind { rt0, bc };

/// Restriction of one basis function to one triangle: v(x) = alpha + beta x,
/// so div_Gamma v = 2 beta. Every RT0-type field has this form per triangle.
struct LocalShape {
  int dof;
  Vec3 alpha;
  double beta;
};

struct BasisValue {
  Vec3 value;
  double divergence;
};

/// Div-conforming space with one DOF per primal edge. RT0 lives on the primal
/// mesh (or, restricted, on its refinement); BC lives on the refinement.
class BasisSpace {
 public:
  BasisSpace(SpaceKind kind, MeshPtr mesh, int dof_count, std::vector<std::vector<LocalShape>> shapes);

  [[nodiscard]] SpaceKind kind() const { return kind_; }
  [[nodiscard]] const MeshPtr& mesh() const { return mesh_; }
  [[nodiscard]] int dof_count() const { return dof_count_; }

  /// Shapes of all DOFs supported on triangle t.
  [[nodiscard]] const std::vector<LocalShape>& shapes(int t) const { return shapes_[t]; }
  /// Triangles in the support of a DOF.
  [[nodiscard]] const std::vector<int>& support(int dof) const { return support_[dof]; }

  /// Value and divergence at a barycentric point of triangle t; zero outside
  /// the support.
  [[nodiscard]] BasisValue evaluate(int dof, int t, const Vec3& bary) const;

  /// Largest number of DOFs on one triangle.
  [[nodiscard]] int max_local_dofs() const { return max_local_; }

 private:
  SpaceKind kind_;
  MeshPtr mesh_;
  int dof_count_;
  int max_local_ = 0;
  std::vector<std::vector<LocalShape>> shapes_;
  std::vector<std::vector<int>> support_;
};

using SpacePtr = std::shared_ptr<const BasisSpace>;

/// RWG functions, flux positive from the edge's left (lower-indexed) triangle.
/// Normalized so that (1/l_e) * (flux through e') = delta_{e e'}.
SpacePtr build_rt0_space(const MeshPtr& mesh);

/// The RT0 space of refined.base re-expressed on refined.fine.
SpacePtr restrict_rt0_to_refinement(const BasisSpace& rt0, const RefinedMesh& refined);

/// Buffa-Christiansen functions on the barycentric refinement, scaled by the
/// primal edge length.
SpacePtr build_bc_space(const RefinedMesh& refined);

/// (1/l) * integral over edge e of v . nu, with nu the in-plane unit normal of
/// e pointing out of triangle t. Exact for RT0-type fields.
double edge_flux(const BasisSpace& space, int dof, int t, int local_edge);

/// Coefficient vector over a space.
class SurfaceDensity {
 public:
  SurfaceDensity(SpacePtr space, ComplexVector coefficients);

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] const ComplexVector& coefficients() const { return coefficients_; }

 private:
  SpacePtr space_;
  ComplexVector coefficients_;
};

}  // namespace cfiebem
