#include <cmath>

#include "cfiebem/analysis.hpp"
#include "cfiebem/bessel.hpp"
#include "cfiebem/mie.hpp"
#include "doctest.h"

using namespace cfiebem;

namespace {

template <class F>
CVec3 fd_curl(const F& f, const Vec3& x, double h) {
  CVec3 c = CVec3::Zero();
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    const CVec3 d = (f(x + e) - f(x - e)) / (2.0 * h);
    c[(k + 2) % 3] += d[(k + 1) % 3];
    c[(k + 1) % 3] -= d[(k + 2) % 3];
  }
  return c;
}

}  // namespace

TEST_CASE("spherical Bessel functions against the standard library") {
  for (double x : {0.05, 0.7, 3.0, 4.4934, 12.0, 45.0}) {
    const int nmax = 40;
    const auto j = spherical_bessel_j(nmax, x);
    for (int n = 0; n <= nmax; ++n) {
      const double ref = std::sph_bessel(n, x);
      if (std::abs(ref) < 1e-290) continue;
      CAPTURE(x);
      CAPTURE(n);
      // 4.4934 sits on a zero of j_1, hence the absolute floor
      CHECK(std::abs(j[n] - ref) <= 1e-12 * std::abs(ref) + 1e-15);
    }
    const int ymax = x < 1.0 ? 20 : 40;
    const auto y = spherical_bessel_y(ymax, x);
    for (int n = 0; n <= ymax; ++n) CHECK(y[n] == doctest::Approx(std::sph_neumann(n, x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(spherical_bessel_j(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_bessel_y(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_bessel_y(300, 1e-3), std::overflow_error);
}

TEST_CASE("Riccati derivative") {
  const double x = 2.3, h = 1e-6;
  const auto j = spherical_bessel_j(10, x);
  const auto d = riccati_derivative_over_x(j, x);
  for (int n = 1; n <= 10; ++n) {
    const double fd = ((x + h) * std::sph_bessel(n, x + h) - (x - h) * std::sph_bessel(n, x - h)) / (2 * h);
    CHECK(d[n] * x == doctest::Approx(fd).epsilon(1e-8));
  }
  const auto hk = spherical_hankel1(5, x);
  CHECK(std::abs(hk[0] - cplx(std::sin(x) / x, -std::cos(x) / x)) < 1e-15);
}

TEST_CASE("perfect conductor boundary condition on the sphere") {
  for (double kappa : {0.3, 2.7437, 4.4934, 10.0}) {
    const MieSolution sol = build_mie(kappa, 1.0);
    const auto pts = eval_points_sphere(200, 1.0);
    const auto es = eval_mie(sol, pts);
    const PlaneWave w(Vec3(1, 0, 0), Vec3(0, 0, 1), kappa);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const CVec3 n = pts[i].cast<cplx>();
      worst = std::max(worst, cross(es[i].e + w.field(pts[i]), n).norm());
    }
    CAPTURE(kappa);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("incident series reproduces the plane wave") {
  const double kappa = 4.4934;
  const MieSolution sol = build_mie(kappa, 1.0, 40);
  const PlaneWave w(Vec3(1, 0, 0), Vec3(0, 0, 1), kappa);
  for (const Vec3& x : {Vec3(0.3, -0.2, 0.5), Vec3(1.2, 0.4, -0.9), Vec3(0, 0, 0.7), Vec3(0, 0, 0)}) {
    const FieldSample s = eval_mie_incident(sol, {x})[0];
    CHECK((s.e - w.field(x)).norm() < 1e-10);
    CHECK((s.curl_e - w.curl(x)).norm() < 1e-9);
  }
}

TEST_CASE("series truncation is converged") {
  const double kappa = 4.4934;
  const MieSolution a = build_mie(kappa, 1.0);
  CHECK(a.n_terms == mie_truncation(kappa, 1.0));
  const MieSolution b = build_mie(kappa, 1.0, a.n_terms + 15);
  const auto pts = eval_points_sphere(50, 2.0);
  const auto ea = eval_mie(a, pts), eb = eval_mie(b, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK((ea[i].e - eb[i].e).norm() < 1e-12);
    CHECK((ea[i].curl_e - eb[i].curl_e).norm() < 1e-11);
  }
}

TEST_CASE("scattered field satisfies Maxwell's equations") {
  const double kappa = 3.0;
  const MieSolution sol = build_mie(kappa, 1.0);
  auto e = [&](const Vec3& x) { return eval_mie(sol, {x})[0].e; };
  auto c = [&](const Vec3& x) { return eval_mie(sol, {x})[0].curl_e; };
  for (const Vec3& x : {Vec3(1.5, 0.3, -0.4), Vec3(-0.2, 0.1, 2.2)}) {
    const FieldSample s = eval_mie(sol, {x})[0];
    CHECK((fd_curl(e, x, 1e-5) - s.curl_e).norm() < 1e-7 * (1 + s.curl_e.norm()));
    CHECK((fd_curl(c, x, 1e-5) - kappa * kappa * s.e).norm() < 1e-6 * (1 + s.e.norm()));
  }
}

TEST_CASE("mirror symmetry of x-polarized incidence") {
  const MieSolution sol = build_mie(2.0, 1.0);
  const Vec3 p(0.7, 1.1, -0.9), q(0.7, -1.1, -0.9);
  const CVec3 a = eval_mie(sol, {p})[0].e, b = eval_mie(sol, {q})[0].e;
  CHECK(std::abs(a[0] - b[0]) < 1e-13);
  CHECK(std::abs(a[1] + b[1]) < 1e-13);
  CHECK(std::abs(a[2] - b[2]) < 1e-13);
}

TEST_CASE("radiation condition and Rayleigh scaling in the far zone") {
  const double r = 1e5;
  const Vec3 dir = Vec3(0.2, 0.6, -0.3).normalized();
  const MieSolution s1 = build_mie(0.01, 1.0), s2 = build_mie(0.02, 1.0);
  const FieldSample f1 = eval_mie(s1, {r * dir})[0], f2 = eval_mie(s2, {r * dir})[0];
  // small spheres scatter with |e_s| proportional to kappa^2 far away
  CHECK(f2.e.norm() / f1.e.norm() == doctest::Approx(4.0).epsilon(1e-3));
  const MieSolution s3 = build_mie(2.0, 1.0);
  const FieldSample f3 = eval_mie(s3, {r * dir})[0];
  CHECK((cross(f3.curl_e, dir.cast<cplx>()) - I * 2.0 * f3.e).norm() < 1e-4 * 2.0 * f3.e.norm());
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(build_mie(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mie(60.0, 1.0), std::invalid_argument);
  const MieSolution sol = build_mie(1.0, 1.0);
  CHECK_THROWS_AS(eval_mie(sol, {Vec3(0.5, 0, 0)}), std::invalid_argument);
  CHECK_NOTHROW(eval_mie(sol, {Vec3(1.0, 0, 0)}));
}
