#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cfiebem/types.hpp"

namespace cfiebem {

using Triangle = std::array<int, 3>;

/// Undirected edge stored with v0 < v1.
struct Edge {
  int v0;
  int v1;
};

/// The two triangles sharing an edge. `left` is the lower-indexed one; the
/// div-conforming basis functions carry positive flux from left to right.
struct EdgeTriangles {
  int left;
  int right;
};

/// Local edge i of a triangle is opposite local vertex i. `sign` is +1 when
/// the triangle is the edge's left triangle.
struct TriangleEdges {
  std::array<int, 3> edge;
  std::array<int, 3> sign;
};

/// Closed, consistently oriented surface made of flat triangles.
///
/// Construction validates the closed-surface and orientation invariants and
/// builds edge connectivity; the object is immutable afterwards.
class TriangleMesh {
 public:
  TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertices_.size()); }
  [[nodiscard]] int num_triangles() const { return static_cast<int>(triangles_.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }

  [[nodiscard]] const std::vector<Vec3>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<Triangle>& triangles() const { return triangles_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

  [[nodiscard]] const Vec3& vertex(int v) const { return vertices_[v]; }
  [[nodiscard]] const Triangle& triangle(int t) const { return triangles_[t]; }
  [[nodiscard]] const Edge& edge(int e) const { return edges_[e]; }
  [[nodiscard]] const EdgeTriangles& edge_triangles(int e) const { return edge_to_triangles_[e]; }
  [[nodiscard]] const TriangleEdges& triangle_edges(int t) const { return triangle_to_edges_[t]; }

  /// Corner `i` of triangle `t`.
  [[nodiscard]] const Vec3& corner(int t, int i) const { return vertices_[triangles_[t][i]]; }
  [[nodiscard]] double area(int t) const { return areas_[t]; }
  /// Unit normal by the right-hand rule over the stored vertex order.
  [[nodiscard]] const Vec3& normal(int t) const { return normals_[t]; }
  [[nodiscard]] Vec3 centroid(int t) const;
  [[nodiscard]] double edge_length(int e) const;
  [[nodiscard]] double total_area() const;

  /// Triangles incident to vertex v.
  [[nodiscard]] const std::vector<int>& vertex_triangles(int v) const { return vertex_to_triangles_[v]; }

  /// Local index (0..2) of global vertex v in triangle t, or -1.
  [[nodiscard]] int local_vertex(int t, int v) const;

 private:
  void build_connectivity();

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<EdgeTriangles> edge_to_triangles_;
  std::vector<TriangleEdges> triangle_to_edges_;
  std::vector<std::vector<int>> vertex_to_triangles_;
  std::vector<double> areas_;
  std::vector<Vec3> normals_;
};

using MeshPtr = std::shared_ptr<const TriangleMesh>;

/// Barycentric refinement: every base triangle is split by its medians into
/// six children. Fine vertex numbering is base vertices, then edge
/// midpoints (offset V), then barycenters (offset V + E).
struct RefinedMesh {
  MeshPtr base;
  MeshPtr fine;
  /// fine triangle -> (base triangle, child index 0..5)
  std::vector<std::pair<int, int>> parent_map;

  [[nodiscard]] int midpoint_vertex(int base_edge) const { return base->num_vertices() + base_edge; }
  [[nodiscard]] int barycenter_vertex(int base_triangle) const {
    return base->num_vertices() + base->num_edges() + base_triangle;
  }
};

/// Longest edge length.
double meshwidth(const TriangleMesh& mesh);

/// Axis-aligned cube centered at the origin; each face is an n x n grid of
/// squares split into two triangles, n = ceil(edge_length * sqrt(2) / h_target).
TriangleMesh make_cube_mesh(double edge_length, double h_target);

/// Geodesic icosphere: every icosahedron face is split into frequency^2
/// triangles and vertices are projected onto the sphere. Frequency 2^k gives
/// the combinatorics of k-fold midpoint subdivision.
TriangleMesh make_icosphere(double radius, int frequency);

/// Icosphere with the smallest frequency whose meshwidth is <= h_target.
TriangleMesh make_sphere_mesh(double radius, double h_target);

RefinedMesh barycentric_refine(const MeshPtr& mesh);

/// Plain-text OFF-style export: "OFF", "V F 0", vertex lines, "3 a b c" lines.
void write_off(const TriangleMesh& mesh, const std::string& path);
TriangleMesh read_off(const std::string& path);

}  // namespace cfiebem
