#include "cfiebem/spaces.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cfiebem {
namespace {

// Shapes keyed by (triangle, dof) while a space is accumulated.
class ShapeAccumulator {
 public:
  explicit ShapeAccumulator(int num_triangles) : per_triangle_(num_triangles) {}

  // c/(2A) (x - p) on triangle t
  void add_rwg(const TriangleMesh& mesh, int t, int dof, double c, const Vec3& p) {
    const double s = c / (2.0 * mesh.area(t));
    auto& slot = per_triangle_[t].try_emplace(dof, Vec3::Zero(), 0.0).first->second;
    slot.first += -s * p;
    slot.second += s;
  }

  void scale_dof(int dof, double factor) { scales_[dof] = factor; }

  std::vector<std::vector<LocalShape>> finish() {
    std::vector<std::vector<LocalShape>> out(per_triangle_.size());
    for (std::size_t t = 0; t < per_triangle_.size(); ++t) {
      for (const auto& [dof, ab] : per_triangle_[t]) {
        auto it = scales_.find(dof);
        const double f = it == scales_.end() ? 1.0 : it->second;
        out[t].push_back(LocalShape{dof, f * ab.first, f * ab.second});
      }
    }
    return out;
  }

 private:
  std::vector<std::map<int, std::pair<Vec3, double>>> per_triangle_;
  std::map<int, double> scales_;
};

}  // namespace

BasisSpace::BasisSpace(SpaceKind kind, MeshPtr mesh, int dof_count, std::vector<std::vector<LocalShape>> shapes)
    : kind_(kind), mesh_(std::move(mesh)), dof_count_(dof_count), shapes_(std::move(shapes)) {
  if (!mesh_) throw std::invalid_argument("BasisSpace: null mesh");
  if (static_cast<int>(shapes_.size()) != mesh_->num_triangles()) {
    throw std::invalid_argument("BasisSpace: shape table does not match mesh");
  }
  support_.assign(dof_count_, {});
  for (int t = 0; t < static_cast<int>(shapes_.size()); ++t) {
    max_local_ = std::max(max_local_, static_cast<int>(shapes_[t].size()));
    for (const LocalShape& s : shapes_[t]) {
      if (s.dof < 0 || s.dof >= dof_count_) throw std::invalid_argument("BasisSpace: dof out of range");
      support_[s.dof].push_back(t);
    }
  }
}

BasisValue BasisSpace::evaluate(int dof, int t, const Vec3& bary) const {
  for (const LocalShape& s : shapes_[t]) {
    if (s.dof == dof) {
      const Vec3 x = bary[0] * mesh_->corner(t, 0) + bary[1] * mesh_->corner(t, 1) + bary[2] * mesh_->corner(t, 2);
      return {s.alpha + s.beta * x, 2.0 * s.beta};
    }
  }
  return {Vec3::Zero(), 0.0};
}

SpacePtr build_rt0_space(const MeshPtr& mesh) {
  const TriangleMesh& m = *mesh;
  ShapeAccumulator acc(m.num_triangles());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const TriangleEdges& te = m.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const int e = te.edge[i];
      acc.add_rwg(m, t, e, te.sign[i] * m.edge_length(e), m.corner(t, i));
    }
  }
  return std::make_shared<const BasisSpace>(SpaceKind::rt0, mesh, m.num_edges(), acc.finish());
}

SpacePtr restrict_rt0_to_refinement(const BasisSpace& rt0, const RefinedMesh& refined) {
  if (rt0.kind() != SpaceKind::rt0 || rt0.mesh() != refined.base) {
    throw std::invalid_argument("restrict_rt0_to_refinement: space must be RT0 on the base mesh");
  }
  std::vector<std::vector<LocalShape>> shapes(refined.fine->num_triangles());
  for (int f = 0; f < refined.fine->num_triangles(); ++f) shapes[f] = rt0.shapes(refined.parent_map[f].first);
  return std::make_shared<const BasisSpace>(SpaceKind::rt0, refined.fine, rt0.dof_count(), std::move(shapes));
}

SpacePtr build_bc_space(const RefinedMesh& refined) {
  const TriangleMesh& base = *refined.base;
  const TriangleMesh& fine = *refined.fine;
  ShapeAccumulator acc(fine.num_triangles());

  // fine edge between vertices a and b
  auto fine_edge_of = [&](int t, int a, int b) {
    const TriangleEdges& te = fine.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const Edge& e = fine.edge(te.edge[i]);
      if ((e.v0 == a && e.v1 == b) || (e.v0 == b && e.v1 == a)) return te.edge[i];
    }
    throw std::logic_error("build_bc_space: fine edge not found");
  };
  auto opposite_vertex = [&](int t, int a, int b) {
    for (int v : fine.triangle(t)) {
      if (v != a && v != b) return v;
    }
    throw std::logic_error("build_bc_space: degenerate fine triangle");
  };
  // unit flux from triangle `from` to triangle `to` across their shared edge (a, b)
  auto add_flux = [&](int dof, int from, int to, int a, int b, double flux) {
    acc.add_rwg(fine, from, dof, flux, fine.vertex(opposite_vertex(from, a, b)));
    acc.add_rwg(fine, to, dof, -flux, fine.vertex(opposite_vertex(to, a, b)));
  };

  // Distribute unit total outflow evenly over the 2N fine triangles around
  // vertex v, entering through the dual edge half next to midpoint m.
  auto walk_cell = [&](int dof, int v, int m, double sign) {
    const int n_fine = static_cast<int>(fine.vertex_triangles(v).size());
    const int n = n_fine / 2;
    // start on a fine triangle containing edge (v, m)
    int t = -1;
    for (int cand : fine.vertex_triangles(v)) {
      if (fine.local_vertex(cand, m) >= 0) {
        t = cand;
        break;
      }
    }
    if (t < 0) throw std::logic_error("build_bc_space: midpoint not in vertex cell");
    int entering_other = m;  // the non-v endpoint of the edge we came in through
    for (int j = 1; j < n_fine; ++j) {
      int next_other = -1;
      for (int w : fine.triangle(t)) {
        if (w != v && w != entering_other) next_other = w;
      }
      const int e = fine_edge_of(t, v, next_other);
      const EdgeTriangles& et = fine.edge_triangles(e);
      const int t_next = et.left == t ? et.right : et.left;
      const double flux = sign * static_cast<double>(j - n) / (2.0 * n);
      add_flux(dof, t, t_next, v, next_other, flux);
      t = t_next;
      entering_other = next_other;
    }
  };

  for (int e = 0; e < base.num_edges(); ++e) {
    const Edge& edge = base.edge(e);
    const EdgeTriangles& et = base.edge_triangles(e);
    const int tl = et.left;
    // in-plane normal of e pointing out of the left triangle
    const Vec3 a = base.vertex(edge.v0), b = base.vertex(edge.v1);
    const Vec3 nl = base.normal(tl);
    Vec3 d = (b - a).cross(nl);
    if (d.dot(0.5 * (a + b) - base.centroid(tl)) < 0.0) d = -d;
    int v_plus = edge.v0, v_minus = edge.v1;
    if ((b - a).cross(nl).dot(d) < 0.0) std::swap(v_plus, v_minus);

    const int m = refined.midpoint_vertex(e);
    walk_cell(e, v_plus, m, 1.0);
    walk_cell(e, v_minus, m, -1.0);
    for (int T : {et.left, et.right}) {
      const int g = refined.barycenter_vertex(T);
      int from = -1, to = -1;
      for (int k = 0; k < 6; ++k) {
        const int f = 6 * T + k;
        if (fine.local_vertex(f, m) >= 0 && fine.local_vertex(f, g) >= 0) {
          if (fine.local_vertex(f, v_plus) >= 0) from = f;
          if (fine.local_vertex(f, v_minus) >= 0) to = f;
        }
      }
      if (from < 0 || to < 0) throw std::logic_error("build_bc_space: dual edge children not found");
      add_flux(e, from, to, m, g, 0.5);
    }
    acc.scale_dof(e, base.edge_length(e));
  }
  return std::make_shared<const BasisSpace>(SpaceKind::bc, refined.fine, base.num_edges(), acc.finish());
}

double edge_flux(const BasisSpace& space, int dof, int t, int local_edge) {
  const TriangleMesh& m = *space.mesh();
  const Vec3& p = m.corner(t, local_edge);
  const Vec3& a = m.corner(t, (local_edge + 1) % 3);
  const Vec3& b = m.corner(t, (local_edge + 2) % 3);
  Vec3 nu = (b - a).cross(m.normal(t)).normalized();
  if (nu.dot(a - p) < 0.0) nu = -nu;
  // v is affine, so the midpoint value is the edge average
  for (const LocalShape& s : space.shapes(t)) {
    if (s.dof == dof) return (s.alpha + s.beta * (0.5 * (a + b))).dot(nu);
  }
  return 0.0;
}

SurfaceDensity::SurfaceDensity(SpacePtr space, ComplexVector coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (!space_) throw std::invalid_argument("SurfaceDensity: null space");
  if (coefficients_.size() != space_->dof_count()) {
    throw std::invalid_argument("SurfaceDensity: coefficient count does not match space dimension");
  }
}

}  // namespace cfiebem
