#include "cfiebem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace cfiebem {
namespace {

constexpr double min_triangle_area = 1e-14;

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw std::invalid_argument("TriangleMesh: no triangles");
  const int nv = num_vertices();
  areas_.reserve(triangles_.size());
  normals_.reserve(triangles_.size());
  for (const auto& tri : triangles_) {
    for (int v : tri) {
      if (v < 0 || v >= nv) throw std::invalid_argument("TriangleMesh: vertex index out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw std::invalid_argument("TriangleMesh: repeated vertex in triangle");
    }
    const Vec3 c = (vertices_[tri[1]] - vertices_[tri[0]]).cross(vertices_[tri[2]] - vertices_[tri[0]]);
    const double a = 0.5 * c.norm();
    if (!(a > min_triangle_area)) throw std::invalid_argument("TriangleMesh: degenerate triangle");
    areas_.push_back(a);
    normals_.push_back(c / c.norm());
  }
  build_connectivity();
}

void TriangleMesh::build_connectivity() {
  const int nt = num_triangles();
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(3 * static_cast<std::size_t>(nt));
  std::unordered_map<std::uint64_t, int> undirected;
  undirected.reserve(2 * static_cast<std::size_t>(nt));

  triangle_to_edges_.assign(nt, TriangleEdges{});
  std::vector<std::array<int, 2>> incident;

  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      if (!directed.emplace(directed_key(a, b), t).second) {
        throw std::invalid_argument("TriangleMesh: inconsistent orientation or non-manifold edge");
      }
      const int lo = std::min(a, b);
      const int hi = std::max(a, b);
      auto [it, inserted] = undirected.emplace(directed_key(lo, hi), static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back(Edge{lo, hi});
        incident.push_back({t, -1});
      } else {
        auto& slots = incident[it->second];
        if (slots[1] != -1) throw std::invalid_argument("TriangleMesh: edge shared by more than two triangles");
        slots[1] = t;
      }
      triangle_to_edges_[t].edge[i] = it->second;
    }
  }

  edge_to_triangles_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& slots = incident[e];
    if (slots[1] == -1) throw std::invalid_argument("TriangleMesh: open surface (boundary edge)");
    edge_to_triangles_[e] = EdgeTriangles{std::min(slots[0], slots[1]), std::max(slots[0], slots[1])};
  }
  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < 3; ++i) {
      triangle_to_edges_[t].sign[i] = edge_to_triangles_[triangle_to_edges_[t].edge[i]].left == t ? 1 : -1;
    }
  }

  vertex_to_triangles_.assign(vertices_.size(), {});
  for (int t = 0; t < nt; ++t) {
    for (int v : triangles_[t]) vertex_to_triangles_[v].push_back(t);
  }
}

Vec3 TriangleMesh::centroid(int t) const {
  return (corner(t, 0) + corner(t, 1) + corner(t, 2)) / 3.0;
}

double TriangleMesh::edge_length(int e) const {
  return (vertices_[edges_[e].v1] - vertices_[edges_[e].v0]).norm();
}

double TriangleMesh::total_area() const {
  double a = 0.0;
  for (double x : areas_) a += x;
  return a;
}

int TriangleMesh::local_vertex(int t, int v) const {
  for (int i = 0; i < 3; ++i) {
    if (triangles_[t][i] == v) return i;
  }
  return -1;
}

double meshwidth(const TriangleMesh& mesh) {
  double h = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) h = std::max(h, mesh.edge_length(e));
  return h;
}

TriangleMesh make_cube_mesh(double edge_length, double h_target) {
  if (!(edge_length > 0.0) || !(h_target > 0.0)) {
    throw std::invalid_argument("make_cube_mesh: edge length and meshwidth must be positive");
  }
  const int n = std::max(1, static_cast<int>(std::ceil(edge_length * std::sqrt(2.0) / h_target - 1e-12)));

  std::map<std::array<int, 3>, int> index;
  std::vector<Vec3> vertices;
  auto vertex_at = [&](std::array<int, 3> g) {
    auto [it, inserted] = index.emplace(g, static_cast<int>(vertices.size()));
    if (inserted) {
      vertices.emplace_back(edge_length * (static_cast<double>(g[0]) / n - 0.5),
                            edge_length * (static_cast<double>(g[1]) / n - 0.5),
                            edge_length * (static_cast<double>(g[2]) / n - 0.5));
    }
    return it->second;
  };

  // (fixed axis, fixed value, u axis, v axis) with u x v pointing outward
  struct Face {
    int axis, level, u, v;
  };
  const std::array<Face, 6> faces{{
      {0, n, 1, 2}, {0, 0, 2, 1}, {1, n, 2, 0}, {1, 0, 0, 2}, {2, n, 0, 1}, {2, 0, 1, 0},
  }};

  std::vector<Triangle> triangles;
  triangles.reserve(12 * static_cast<std::size_t>(n) * n);
  for (const Face& f : faces) {
    auto grid = [&](int i, int j) {
      std::array<int, 3> g{};
      g[f.axis] = f.level;
      g[f.u] = i;
      g[f.v] = j;
      return vertex_at(g);
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int p00 = grid(i, j);
        const int p10 = grid(i + 1, j);
        const int p11 = grid(i + 1, j + 1);
        const int p01 = grid(i, j + 1);
        triangles.push_back({p00, p10, p11});
        triangles.push_back({p00, p11, p01});
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_icosphere(double radius, int frequency) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_icosphere: radius must be positive");
  if (frequency < 1) throw std::invalid_argument("make_icosphere: frequency must be >= 1");

  const double t = 0.5 * (1.0 + std::sqrt(5.0));
  const std::array<Vec3, 12> ico{{
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  }};
  std::array<Triangle, 20> ico_faces{{
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1},
  }};
  for (auto& f : ico_faces) {
    const Vec3 c = ico[f[0]] + ico[f[1]] + ico[f[2]];
    const Vec3 nrm = (ico[f[1]] - ico[f[0]]).cross(ico[f[2]] - ico[f[0]]);
    if (nrm.dot(c) < 0.0) std::swap(f[1], f[2]);
  }

  const int n = frequency;
  // lattice point keyed by its (icosahedron vertex, integer weight) pairs
  using Key = std::array<int, 6>;
  std::map<Key, int> index;
  std::vector<Vec3> vertices;
  auto lattice_vertex = [&](const Triangle& f, int i, int j) {
    std::array<std::pair<int, int>, 3> w{{{f[0], n - i - j}, {f[1], i}, {f[2], j}}};
    std::sort(w.begin(), w.end());
    Key key{-1, 0, -1, 0, -1, 0};
    int slot = 0;
    Vec3 p = Vec3::Zero();
    for (const auto& [v, wt] : w) {
      if (wt == 0) continue;
      key[2 * slot] = v;
      key[2 * slot + 1] = wt;
      ++slot;
      p += (static_cast<double>(wt) / n) * ico[v];
    }
    auto [it, inserted] = index.emplace(key, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(radius * p.normalized());
    return it->second;
  };

  std::vector<Triangle> triangles;
  triangles.reserve(20 * static_cast<std::size_t>(n) * n);
  for (const auto& f : ico_faces) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i + j < n; ++i) {
        triangles.push_back({lattice_vertex(f, i, j), lattice_vertex(f, i + 1, j), lattice_vertex(f, i, j + 1)});
        if (i + j + 2 <= n) {
          triangles.push_back(
              {lattice_vertex(f, i + 1, j), lattice_vertex(f, i + 1, j + 1), lattice_vertex(f, i, j + 1)});
        }
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_sphere_mesh(double radius, double h_target) {
  if (!(radius > 0.0) || !(h_target > 0.0)) {
    throw std::invalid_argument("make_sphere_mesh: radius and meshwidth must be positive");
  }
  constexpr int max_frequency = 400;
  for (int n = 1; n <= max_frequency; ++n) {
    TriangleMesh mesh = make_icosphere(radius, n);
    if (meshwidth(mesh) <= h_target) return mesh;
  }
  throw std::invalid_argument("make_sphere_mesh: meshwidth target too small");
}

RefinedMesh barycentric_refine(const MeshPtr& mesh) {
  const TriangleMesh& base = *mesh;
  const int nv = base.num_vertices();
  const int ne = base.num_edges();
  const int nt = base.num_triangles();

  std::vector<Vec3> vertices(base.vertices());
  vertices.reserve(static_cast<std::size_t>(nv + ne + nt));
  for (int e = 0; e < ne; ++e) {
    vertices.push_back(0.5 * (base.vertex(base.edge(e).v0) + base.vertex(base.edge(e).v1)));
  }
  for (int t = 0; t < nt; ++t) vertices.push_back(base.centroid(t));

  std::vector<Triangle> triangles;
  triangles.reserve(6 * static_cast<std::size_t>(nt));
  std::vector<std::pair<int, int>> parent;
  parent.reserve(6 * static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = base.triangle(t);
    const auto& te = base.triangle_edges(t);
    const int a = tri[0], b = tri[1], c = tri[2];
    const int m_bc = nv + te.edge[0];
    const int m_ca = nv + te.edge[1];
    const int m_ab = nv + te.edge[2];
    const int g = nv + ne + t;
    const std::array<Triangle, 6> children{{
        {a, m_ab, g}, {m_ab, b, g}, {b, m_bc, g}, {m_bc, c, g}, {c, m_ca, g}, {m_ca, a, g},
    }};
    for (int k = 0; k < 6; ++k) {
      triangles.push_back(children[k]);
      parent.emplace_back(t, k);
    }
  }

  RefinedMesh out;
  out.base = mesh;
  out.fine = std::make_shared<const TriangleMesh>(std::move(vertices), std::move(triangles));
  out.parent_map = std::move(parent);
  return out;
}

}  // namespace cfiebem
