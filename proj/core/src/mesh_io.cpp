#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "cfiebem/mesh.hpp"

namespace cfiebem {

void write_off(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_off: cannot open " + path);
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << " 0\n";
  out << std::setprecision(17);
  for (const Vec3& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  if (!out) throw std::runtime_error("write_off: write failed for " + path);
}

TriangleMesh read_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_off: cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "OFF") throw std::runtime_error("read_off: missing OFF header in " + path);
  int nv = 0, nt = 0, ne = 0;
  in >> nv >> nt >> ne;
  if (!in || nv <= 0 || nt <= 0) throw std::runtime_error("read_off: bad counts in " + path);
  std::vector<Vec3> vertices(nv);
  for (auto& v : vertices) in >> v.x() >> v.y() >> v.z();
  std::vector<Triangle> triangles(nt);
  for (auto& t : triangles) {
    int k = 0;
    in >> k >> t[0] >> t[1] >> t[2];
    if (k != 3) throw std::runtime_error("read_off: only triangles are supported");
  }
  if (!in) throw std::runtime_error("read_off: truncated file " + path);
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

}  // namespace cfiebem
