#include "cfiebem/mie.hpp"

#include <cmath>
#include <stdexcept>

#include "cfiebem/bessel.hpp"

namespace cfiebem {
namespace {

// Radial tables z_n(rho) and (rho z_n)'/rho for n = 0..nmax.
struct Radial {
  std::vector<cplx> z;
  std::vector<cplx> dz;
};

Radial radial_table(int nmax, double rho, bool outgoing) {
  Radial r;
  if (outgoing) {
    r.z = spherical_hankel1(nmax, rho);
  } else {
    const std::vector<double> j = spherical_bessel_j(nmax, rho);
    r.z.assign(j.begin(), j.end());
  }
  r.dz = riccati_derivative_over_x(r.z, rho);
  return r;
}

// sum_n E_n (cN_n N_e1n + cM_n M_o1n) and kappa sum_n E_n (cN_n M_e1n + cM_n N_o1n).
FieldSample sum_series(const MieSolution& sol, const Vec3& x, const std::vector<cplx>& cN, const std::vector<cplx>& cM,
                       bool outgoing) {
  const int nmax = sol.n_terms;
  const double r = x.norm();
  const double rho = sol.kappa * r;
  const double rxy = std::hypot(x.x(), x.y());
  const double cth = x.z() / r, sth = rxy / r;
  const double phi = std::atan2(x.y(), x.x());
  const double cph = std::cos(phi), sph = std::sin(phi);

  const Radial rad = radial_table(nmax, rho, outgoing);
  cplx er = 0, eth = 0, eph = 0, cr = 0, cth_ = 0, cph_ = 0;
  double pi_prev = 0.0, pi_cur = 1.0;  // pi_0, pi_1
  cplx in = I;                          // i^n
  for (int n = 1; n <= nmax; ++n) {
    if (n >= 2) {
      const double next = ((2.0 * n - 1.0) * cth * pi_cur - n * pi_prev) / (n - 1.0);
      pi_prev = pi_cur;
      pi_cur = next;
      in *= I;
    }
    const double tau = n * cth * pi_cur - (n + 1.0) * pi_prev;
    const double nn1 = n * (n + 1.0);
    const cplx En = sol.amplitude * in * (2.0 * n + 1.0) / nn1;
    const cplx z = rad.z[n], dz = rad.dz[n];
    const cplx zr = nn1 * sth * pi_cur * z / rho;
    const cplx a = En * cN[n], b = En * cM[n];
    // N_e1n = (cph zr, cph tau dz, -sph pi dz);  M_o1n = (0, cph pi z, -sph tau z)
    er += a * cph * zr;
    eth += a * cph * tau * dz + b * cph * pi_cur * z;
    eph += -a * sph * pi_cur * dz - b * sph * tau * z;
    // M_e1n = (0, -sph pi z, -cph tau z);  N_o1n = (sph zr, sph tau dz, cph pi dz)
    cr += b * sph * zr;
    cth_ += -a * sph * pi_cur * z + b * sph * tau * dz;
    cph_ += -a * cph * tau * z + b * cph * pi_cur * dz;
  }
  const Vec3 ur(sth * cph, sth * sph, cth);
  const Vec3 ut(cth * cph, cth * sph, -sth);
  const Vec3 up(-sph, cph, 0.0);
  const CVec3 e = er * ur.cast<cplx>() + eth * ut.cast<cplx>() + eph * up.cast<cplx>();
  const CVec3 c = sol.kappa * (cr * ur.cast<cplx>() + cth_ * ut.cast<cplx>() + cph_ * up.cast<cplx>());
  return FieldSample{x, e, c};
}

}  // namespace

int mie_truncation(double kappa, double radius) {
  const double x = kappa * radius;
  return static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 10.0));
}

MieSolution build_mie(double kappa, double radius, int n_terms, double amplitude) {
  if (!(kappa > 0.0) || !(radius > 0.0)) throw std::invalid_argument("build_mie: kappa and radius must be positive");
  const double x = kappa * radius;
  if (!(x < 50.0)) throw std::invalid_argument("build_mie: kappa * radius must be below 50");
  MieSolution sol{kappa, radius, amplitude, n_terms > 0 ? n_terms : mie_truncation(kappa, radius), {}, {}};
  const int nmax = sol.n_terms;
  const std::vector<double> j = spherical_bessel_j(nmax, x);
  const std::vector<cplx> h = spherical_hankel1(nmax, x);
  const std::vector<double> dj = riccati_derivative_over_x(j, x);
  const std::vector<cplx> dh = riccati_derivative_over_x(h, x);
  sol.a.assign(nmax + 1, 0.0);
  sol.b.assign(nmax + 1, 0.0);
  for (int n = 1; n <= nmax; ++n) {
    // psi_n'/xi_n' = (x j_n)'/(x h_n)',  psi_n/xi_n = j_n/h_n
    sol.a[n] = dj[n] / dh[n];
    sol.b[n] = j[n] / h[n];
    if (!std::isfinite(sol.a[n].real()) || !std::isfinite(sol.b[n].real()))
      throw std::overflow_error("build_mie: non-finite coefficient at order " + std::to_string(n));
  }
  return sol;
}

std::vector<FieldSample> eval_mie(const MieSolution& sol, const std::vector<Vec3>& points) {
  std::vector<cplx> cN(sol.n_terms + 1), cM(sol.n_terms + 1);
  for (int n = 1; n <= sol.n_terms; ++n) {
    cN[n] = I * sol.a[n];
    cM[n] = -sol.b[n];
  }
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const Vec3& x : points) {
    if (x.norm() < sol.radius * (1.0 - 1e-12)) throw std::invalid_argument("eval_mie: interior point");
    out.push_back(sum_series(sol, x, cN, cM, true));
  }
  return out;
}

std::vector<FieldSample> eval_mie_incident(const MieSolution& sol, const std::vector<Vec3>& points) {
  std::vector<cplx> cN(sol.n_terms + 1, -I), cM(sol.n_terms + 1, 1.0);
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const Vec3& x : points) {
    if (x.norm() == 0.0) {
      out.push_back(FieldSample{x, CVec3(sol.amplitude, 0.0, 0.0), CVec3(0.0, sol.amplitude * I * sol.kappa, 0.0)});
      continue;
    }
    out.push_back(sum_series(sol, x, cN, cM, false));
  }
  return out;
}

}  // namespace cfiebem
