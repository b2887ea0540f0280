#include "cfiebem/analysis.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

namespace cfiebem {

std::vector<cplx> eigenvalues(const ComplexDenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  ComplexDenseMatrix work = a;  // column major, overwritten
  std::vector<cplx> w(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()),
                                        n, reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("eigenvalues: zgeev failed with info " + std::to_string(info));
  return w;
}

double condition_number(const ComplexDenseMatrix& a) {
  const std::vector<cplx> w = eigenvalues(a);
  if (w.empty()) throw std::invalid_argument("condition_number: empty matrix");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const cplx& l : w) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  if (lo < 1e-300) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double preconditioned_cond(const CfieSystem& sys) { return condition_number(sys.preconditioned_operator()); }

double avg_pointwise_error(const std::vector<FieldSample>& numeric, const std::vector<FieldSample>& exact) {
  if (numeric.size() != exact.size() || numeric.empty())
    throw std::invalid_argument("avg_pointwise_error: sample lists differ in size or are empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    if ((numeric[i].point - exact[i].point).norm() > 1e-12 * (1.0 + exact[i].point.norm()))
      throw std::invalid_argument("avg_pointwise_error: sample points differ");
    sum += std::sqrt((numeric[i].e - exact[i].e).squaredNorm() + (numeric[i].curl_e - exact[i].curl_e).squaredNorm());
  }
  return sum / static_cast<double>(numeric.size());
}

std::vector<Vec3> eval_points_sphere(int n, double radius) {
  if (n < 1) throw std::invalid_argument("eval_points_sphere: n must be positive");
  const double golden = pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> p;
  p.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    p.emplace_back(radius * rho * std::cos(phi), radius * rho * std::sin(phi), radius * z);
  }
  return p;
}

Geometry parse_geometry(const std::string& name) {
  if (name == "sphere") return Geometry::sphere;
  if (name == "cube") return Geometry::cube;
  throw std::invalid_argument("unknown geometry '" + name + "'");
}

std::string to_string(Geometry g) { return g == Geometry::sphere ? "sphere" : "cube"; }

std::vector<double> resonance_table(Geometry g, double kappa_max) {
  if (g == Geometry::sphere) {
    std::vector<double> out;
    for (double k : {2.7437, 3.8702, 4.4934})
      if (k <= kappa_max) out.push_back(k);
    return out;
  }
  std::set<int> sums;
  const int lim = static_cast<int>(kappa_max / pi) + 1;
  for (int l = 0; l <= lim; ++l)
    for (int m = 0; m <= lim; ++m)
      for (int n = 0; n <= lim; ++n) {
        if ((l == 0) + (m == 0) + (n == 0) > 1) continue;
        const int s = l * l + m * m + n * n;
        if (pi * std::sqrt(s) <= kappa_max) sums.insert(s);
      }
  std::vector<double> out;
  for (int s : sums) out.push_back(pi * std::sqrt(static_cast<double>(s)));
  return out;
}

std::string to_csv_row(const SweepRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%d,%d,", r.geom.c_str(), r.h, r.kappa,
                r.kappa_prime, r.eta, r.cond_cfie, r.cond_efie, r.iters_cfie, r.iters_efie);
  std::string row(buf);
  if (r.err_h) {
    std::snprintf(buf, sizeof buf, "%.10g", *r.err_h);
    row += buf;
  }
  return row;
}

void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& os) {
  os << sweep_csv_header << '\n';
  for (const SweepRecord& r : rows) os << to_csv_row(r) << '\n';
}

}  // namespace cfiebem
