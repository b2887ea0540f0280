#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>

#include "cfiebem/mesh.hpp"
#include "doctest.h"

using namespace cfiebem;

namespace {

void check_closed_surface(const TriangleMesh& m) {
  CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 2);
  CHECK(2 * m.num_edges() == 3 * m.num_triangles());
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& et = m.edge_triangles(e);
    CHECK(et.left < et.right);
    CHECK(m.edge(e).v0 < m.edge(e).v1);
  }
  // every edge is traversed once in each direction
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    int forward = 0, backward = 0;
    for (int t : {m.edge_triangles(e).left, m.edge_triangles(e).right}) {
      for (int i = 0; i < 3; ++i) {
        const int a = m.triangle(t)[i], b = m.triangle(t)[(i + 1) % 3];
        if (a == ed.v0 && b == ed.v1) ++forward;
        if (a == ed.v1 && b == ed.v0) ++backward;
      }
    }
    CHECK(forward == 1);
    CHECK(backward == 1);
  }
}

// Outward orientation through the divergence theorem: (1/3) int x . n = volume.
double enclosed_volume(const TriangleMesh& m) {
  double v = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) v += m.centroid(t).dot(m.normal(t)) * m.area(t) / 3.0;
  return v;
}

}  // namespace

TEST_CASE("cube with one square per face") {
  const TriangleMesh m = make_cube_mesh(1.0, 2.0);
  CHECK(m.num_vertices() == 8);
  CHECK(m.num_edges() == 18);
  CHECK(m.num_triangles() == 12);
  CHECK(m.total_area() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(meshwidth(m) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(enclosed_volume(m) == doctest::Approx(1.0).epsilon(1e-13));
  check_closed_surface(m);
}

TEST_CASE("cube grid resolution follows the meshwidth target") {
  const TriangleMesh m = make_cube_mesh(1.0, 0.75);
  CHECK(m.num_triangles() == 48);
  CHECK(meshwidth(m) <= 0.75);
  const TriangleMesh fine = make_cube_mesh(2.0, 0.3);
  CHECK(meshwidth(fine) <= 0.3);
  CHECK(fine.total_area() == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(enclosed_volume(fine) == doctest::Approx(8.0).epsilon(1e-12));
  check_closed_surface(fine);
}

TEST_CASE("cube normals are axis aligned and outward") {
  const TriangleMesh m = make_cube_mesh(1.0, 0.5);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Vec3& n = m.normal(t);
    CHECK(n.norm() == doctest::Approx(1.0));
    CHECK(n.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(n.dot(m.centroid(t)) > 0.0);
  }
}

TEST_CASE("icosahedron") {
  const TriangleMesh m = make_icosphere(1.0, 1);
  CHECK(m.num_vertices() == 12);
  CHECK(m.num_edges() == 30);
  CHECK(m.num_triangles() == 20);
  // circumradius 1 gives edge 4 / sqrt(10 + 2 sqrt 5)
  const double edge = 4.0 / std::sqrt(10.0 + 2.0 * std::sqrt(5.0));
  for (int e = 0; e < m.num_edges(); ++e) CHECK(m.edge_length(e) == doctest::Approx(edge).epsilon(1e-13));
  check_closed_surface(m);
  CHECK(enclosed_volume(m) > 0.0);
}

TEST_CASE("icosphere frequency 4") {
  const double r = 1.5;
  const TriangleMesh m = make_icosphere(r, 4);
  CHECK(m.num_triangles() == 320);
  CHECK(m.num_vertices() == 162);
  for (const Vec3& v : m.vertices()) CHECK(v.norm() == doctest::Approx(r).epsilon(1e-14));
  // inscribed polyhedron: strictly below the sphere's area and volume
  CHECK(m.total_area() < 4.0 * pi * r * r);
  CHECK(m.total_area() > 0.95 * 4.0 * pi * r * r);
  CHECK(enclosed_volume(m) < 4.0 / 3.0 * pi * r * r * r);
  check_closed_surface(m);
  for (int t = 0; t < m.num_triangles(); ++t) CHECK(m.normal(t).dot(m.centroid(t)) > 0.0);
}

TEST_CASE("sphere mesh meets the meshwidth target with the smallest frequency") {
  for (double h : {0.45, 0.3, 0.2}) {
    const TriangleMesh m = make_sphere_mesh(1.0, h);
    CHECK(meshwidth(m) <= h);
    const int freq = static_cast<int>(std::lround(std::sqrt(m.num_triangles() / 20.0)));
    CHECK(20 * freq * freq == m.num_triangles());
    CHECK(meshwidth(make_icosphere(1.0, freq - 1)) > h);
  }
}

TEST_CASE("barycentric refinement") {
  auto base = std::make_shared<const TriangleMesh>(make_icosphere(1.0, 2));
  const RefinedMesh r = barycentric_refine(base);
  const TriangleMesh& f = *r.fine;
  CHECK(f.num_triangles() == 6 * base->num_triangles());
  CHECK(f.num_vertices() == base->num_vertices() + base->num_edges() + base->num_triangles());
  CHECK(f.total_area() == doctest::Approx(base->total_area()).epsilon(1e-13));
  check_closed_surface(f);
  REQUIRE(r.parent_map.size() == static_cast<std::size_t>(f.num_triangles()));
  std::vector<int> children(base->num_triangles(), 0);
  for (int t = 0; t < f.num_triangles(); ++t) {
    const auto [p, c] = r.parent_map[t];
    ++children[p];
    CHECK(c >= 0);
    CHECK(c < 6);
    // each child has area one sixth of its parent and keeps its normal
    CHECK(f.area(t) == doctest::Approx(base->area(p) / 6.0).epsilon(1e-12));
    CHECK(f.normal(t).dot(base->normal(p)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.local_vertex(t, r.barycenter_vertex(p)) >= 0);
  }
  for (int c : children) CHECK(c == 6);
  for (int e = 0; e < base->num_edges(); ++e) {
    const Vec3 mid = 0.5 * (base->vertex(base->edge(e).v0) + base->vertex(base->edge(e).v1));
    CHECK((f.vertex(r.midpoint_vertex(e)) - mid).norm() < 1e-14);
  }
  for (int t = 0; t < base->num_triangles(); ++t)
    CHECK((f.vertex(r.barycenter_vertex(t)) - base->centroid(t)).norm() < 1e-14);
}

TEST_CASE("connectivity tables agree") {
  const TriangleMesh m = make_cube_mesh(1.0, 0.8);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const TriangleEdges& te = m.triangle_edges(t);
    for (int i = 0; i < 3; ++i) {
      const Edge& e = m.edge(te.edge[i]);
      // local edge i is opposite local vertex i
      CHECK(e.v0 != m.triangle(t)[i]);
      CHECK(e.v1 != m.triangle(t)[i]);
      const EdgeTriangles& et = m.edge_triangles(te.edge[i]);
      CHECK(te.sign[i] == (et.left == t ? 1 : -1));
    }
  }
  for (int v = 0; v < m.num_vertices(); ++v)
    for (int t : m.vertex_triangles(v)) CHECK(m.local_vertex(t, v) >= 0);
}

TEST_CASE("OFF roundtrip") {
  const TriangleMesh m = make_icosphere(2.0, 3);
  const auto path = (std::filesystem::temp_directory_path() / "cfiebem_mesh_roundtrip.off").string();
  write_off(m, path);
  const TriangleMesh back = read_off(path);
  std::remove(path.c_str());
  REQUIRE(back.num_vertices() == m.num_vertices());
  REQUIRE(back.num_triangles() == m.num_triangles());
  for (int v = 0; v < m.num_vertices(); ++v) CHECK((back.vertex(v) - m.vertex(v)).norm() == 0.0);
  for (int t = 0; t < m.num_triangles(); ++t) CHECK(back.triangle(t) == m.triangle(t));
  CHECK_THROWS_AS(read_off("/nonexistent/dir/mesh.off"), std::runtime_error);
}

TEST_CASE("invalid surfaces are rejected") {
  const std::vector<Vec3> tet{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  // consistently oriented tetrahedron is accepted
  CHECK_NOTHROW(TriangleMesh(tet, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}));
  SUBCASE("open") { CHECK_THROWS_AS(TriangleMesh(tet, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}}), std::invalid_argument); }
  SUBCASE("flipped face") {
    CHECK_THROWS_AS(TriangleMesh(tet, {{0, 1, 2}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}), std::invalid_argument);
  }
  SUBCASE("bad index") {
    CHECK_THROWS_AS(TriangleMesh(tet, {{0, 2, 7}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}), std::invalid_argument);
  }
  SUBCASE("degenerate") {
    const std::vector<Vec3> flat{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(TriangleMesh(flat, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}), std::invalid_argument);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(TriangleMesh(tet, {}), std::invalid_argument); }
  SUBCASE("generators") {
    CHECK_THROWS_AS(make_cube_mesh(-1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_icosphere(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_sphere_mesh(1.0, 0.0), std::invalid_argument);
  }
}
