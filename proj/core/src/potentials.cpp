#include "cfiebem/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <thread>

namespace cfiebem {
namespace {

struct SourcePoint {
  Vec3 y;
  double w;
  CVec3 phi;
  cplx div_phi;
  CVec3 psi;
  cplx div_psi;
};

std::vector<SourcePoint> tabulate(const ComplexVector& phi, const ComplexVector& psi, const BasisSpace& space,
                                  int order) {
  const TriangleMesh& mesh = *space.mesh();
  const TriangleRule& rule = gauss_triangle_rule(order);
  std::vector<SourcePoint> out;
  out.reserve(static_cast<std::size_t>(mesh.num_triangles()) * rule.points.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec3& p = rule.points[q];
      SourcePoint s{p[0] * mesh.corner(t, 0) + p[1] * mesh.corner(t, 1) + p[2] * mesh.corner(t, 2),
                    2.0 * mesh.area(t) * rule.weights[q], CVec3::Zero(), 0.0, CVec3::Zero(), 0.0};
      for (const LocalShape& sh : space.shapes(t)) {
        const Vec3 v = sh.alpha + sh.beta * s.y;
        s.phi += phi[sh.dof] * v.cast<cplx>();
        s.div_phi += phi[sh.dof] * (2.0 * sh.beta);
        s.psi += psi[sh.dof] * v.cast<cplx>();
        s.div_psi += psi[sh.dof] * (2.0 * sh.beta);
      }
      out.push_back(s);
    }
  }
  return out;
}

void check_point(const TriangleMesh& mesh, const Vec3& x, double h, double min_dist) {
  double dmin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double rough = (x - mesh.centroid(t)).norm();
    if (rough - h > dmin) continue;
    dmin = std::min(dmin, point_triangle_distance(mesh, t, x));
  }
  if (dmin < min_dist) throw std::invalid_argument("eval_scattered: point too close to the surface");
  if (winding_number(mesh, x) > 0.5) throw std::invalid_argument("eval_scattered: interior point");
}

}  // namespace

double winding_number(const TriangleMesh& mesh, const Vec3& x) {
  double omega = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 a = mesh.corner(t, 0) - x;
    const Vec3 b = mesh.corner(t, 1) - x;
    const Vec3 c = mesh.corner(t, 2) - x;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    omega += 2.0 * std::atan2(num, den);
  }
  return omega / (4.0 * pi);
}

double point_triangle_distance(const TriangleMesh& mesh, int t, const Vec3& p) {
  // Closest point by Voronoi region of the triangle (Ericson, RTCD 5.1.5).
  const Vec3& a = mesh.corner(t, 0);
  const Vec3& b = mesh.corner(t, 1);
  const Vec3& c = mesh.corner(t, 2);
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return ap.norm();
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return bp.norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return (p - (a + d1 / (d1 - d3) * ab)).norm();
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return cp.norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return (p - (a + d2 / (d2 - d6) * ac)).norm();
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return (p - (b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b))).norm();
  const double den = 1.0 / (va + vb + vc);
  return (p - (a + ab * (vb * den) + ac * (vc * den))).norm();
}

std::vector<FieldSample> eval_scattered(const SurfaceDensity& xi, const SurfaceDensity& phi,
                                        const SurfaceDensity& psi, double kappa, double eta,
                                        const std::vector<Vec3>& points, const PotentialOptions& opt) {
  if (phi.space() != psi.space()) throw std::invalid_argument("eval_scattered: phi and psi on different spaces");
  if (!xi.space() || xi.space()->dof_count() != phi.space()->dof_count())
    throw std::invalid_argument("eval_scattered: densities from different systems");
  if (!(kappa > 0.0)) throw std::invalid_argument("eval_scattered: kappa must be positive");
  const BasisSpace& space = *phi.space();
  const TriangleMesh& mesh = *space.mesh();
  const double h = meshwidth(mesh);
  for (const Vec3& x : points) check_point(mesh, x, h, opt.min_distance_ratio * h);

  const std::vector<SourcePoint> src = tabulate(phi.coefficients(), psi.coefficients(), space, opt.order);
  const HelmholtzRadial kern{cplx(kappa, 0.0)};
  const cplx ieta = I * eta;
  const double k2 = kappa * kappa;

  std::vector<FieldSample> out(points.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Vec3& x = points[i];
      CVec3 a_phi = CVec3::Zero(), g_phi = CVec3::Zero(), d_phi = CVec3::Zero();
      CVec3 a_psi = CVec3::Zero(), g_psi = CVec3::Zero(), d_psi = CVec3::Zero();
      for (const SourcePoint& s : src) {
        const Vec3 d = x - s.y;
        const double r = d.norm();
        const cplx gv = s.w * kern.value(r);
        const CVec3 grad = (s.w * kern.grad_factor(r)) * d.cast<cplx>();
        a_phi += gv * s.phi;
        g_phi += grad * s.div_phi;
        d_phi += cross(grad, s.phi);
        a_psi += gv * s.psi;
        g_psi += grad * s.div_psi;
        d_psi += cross(grad, s.psi);
      }
      const CVec3 sl_phi = a_phi + g_phi / k2;
      const CVec3 sl_psi = a_psi + g_psi / k2;
      out[i] = FieldSample{x, ieta * sl_phi + d_psi, ieta * d_phi + k2 * sl_psi};
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(points.size())));
  if (jobs == 1) {
    work(0, points.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (points.size() + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      const std::size_t b = j * chunk, e = std::min(points.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<FieldSample> eval_scattered(const CfieSolution& sol, const CfieSystem& sys,
                                        const std::vector<Vec3>& points, const PotentialOptions& opt) {
  return eval_scattered(sol.xi, sol.phi, sol.psi, sys.wavenumber().kappa, sys.eta().eta, points, opt);
}

std::vector<FieldSample> eval_incident(const PlaneWave& wave, const std::vector<Vec3>& points) {
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const Vec3& x : points) out.push_back(FieldSample{x, wave.field(x), wave.curl(x)});
  return out;
}

void write_field_csv(const std::vector<FieldSample>& samples, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_field_csv: cannot open " + path);
  f << "x,y,z";
  for (const char* name : {"ex", "ey", "ez", "curl_ex", "curl_ey", "curl_ez"}) f << ",Re(" << name << "),Im(" << name << ")";
  f << '\n' << std::setprecision(17);
  for (const FieldSample& s : samples) {
    f << s.point.x() << ',' << s.point.y() << ',' << s.point.z();
    for (int c = 0; c < 3; ++c) f << ',' << s.e[c].real() << ',' << s.e[c].imag();
    for (int c = 0; c < 3; ++c) f << ',' << s.curl_e[c].real() << ',' << s.curl_e[c].imag();
    f << '\n';
  }
}

}  // namespace cfiebem
