#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cfiebem/analysis.hpp"
#include "cfiebem/blas_runtime.hpp"
#include "doctest.h"

using namespace cfiebem;

namespace {

ComplexDenseMatrix random_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexDenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(d(gen), d(gen));
  return a;
}

std::vector<FieldSample> samples(const std::vector<Vec3>& pts, const CVec3& e, const CVec3& c) {
  std::vector<FieldSample> out;
  for (const Vec3& p : pts) out.push_back(FieldSample{p, e, c});
  return out;
}

}  // namespace

TEST_CASE("condition number of simple matrices") {
  CHECK(condition_number(ComplexDenseMatrix::Identity(5, 5)) == doctest::Approx(1.0));
  ComplexDenseMatrix d = ComplexDenseMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 10.0;
  CHECK(condition_number(d) == doctest::Approx(10.0).epsilon(1e-14));
  // spectral, not singular-value based: a Jordan-like block has ratio 1
  ComplexDenseMatrix j = ComplexDenseMatrix::Identity(2, 2);
  j(0, 1) = 100.0;
  CHECK(condition_number(j) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isinf(condition_number(ComplexDenseMatrix::Zero(3, 3))));
  CHECK_THROWS_AS(condition_number(ComplexDenseMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(condition_number(ComplexDenseMatrix(0, 0)), std::invalid_argument);
}

TEST_CASE("eigenvalues agree with an independent eigensolver") {
  const ComplexDenseMatrix a = random_matrix(50, 42);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(a, false);
  const auto ref = ces.eigenvalues();
  double lo = INFINITY, hi = 0.0;
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    lo = std::min(lo, std::abs(ref[i]));
    hi = std::max(hi, std::abs(ref[i]));
  }
  CHECK(condition_number(a) == doctest::Approx(hi / lo).epsilon(1e-6));
  // each eigenvalue has a partner in the reference set
  for (const cplx& l : eigenvalues(a)) {
    double best = INFINITY;
    for (Eigen::Index i = 0; i < ref.size(); ++i) best = std::min(best, std::abs(ref[i] - l));
    CHECK(best < 1e-9 * hi);
  }
}

TEST_CASE("condition number is scale invariant") {
  const ComplexDenseMatrix a = random_matrix(30, 7);
  const double c = condition_number(a);
  for (cplx s : {cplx(3.0, 0.0), cplx(0.0, -1e-5), cplx(2e4, 7.0)})
    CHECK(condition_number(s * a) == doctest::Approx(c).epsilon(1e-10));
}

TEST_CASE("average pointwise error") {
  const std::vector<Vec3> pts = eval_points_sphere(10, 2.0);
  const auto zero = samples(pts, CVec3::Zero(), CVec3::Zero());
  const auto unit = samples(pts, CVec3(1, 0, 0), CVec3::Zero());
  CHECK(avg_pointwise_error(zero, zero) == 0.0);
  CHECK(avg_pointwise_error(unit, zero) == doctest::Approx(1.0));
  CHECK(avg_pointwise_error(zero, unit) == doctest::Approx(1.0));
  const auto mixed = samples(pts, CVec3(0, 3, 0), CVec3(0, 0, cplx(0, 4)));
  CHECK(avg_pointwise_error(mixed, zero) == doctest::Approx(5.0));
  const auto doubled = samples(pts, CVec3(0, 6, 0), CVec3(0, 0, cplx(0, 8)));
  CHECK(avg_pointwise_error(doubled, zero) == doctest::Approx(2.0 * avg_pointwise_error(mixed, zero)));
  CHECK_THROWS_AS(avg_pointwise_error(zero, {}), std::invalid_argument);
  CHECK_THROWS_AS(avg_pointwise_error(zero, samples(eval_points_sphere(10, 3.0), CVec3::Zero(), CVec3::Zero())),
                  std::invalid_argument);
}

TEST_CASE("Fibonacci points") {
  const auto p = eval_points_sphere(5000, 2.0);
  REQUIRE(p.size() == 5000);
  Vec3 mean = Vec3::Zero();
  for (const Vec3& x : p) {
    CHECK(std::abs(x.norm() - 2.0) < 1e-12);
    mean += x;
  }
  mean /= 5000.0;
  CHECK(mean.norm() < 0.01 * 2.0);
  CHECK(eval_points_sphere(5000, 2.0) == p);
  CHECK(eval_points_sphere(1, 1.0).size() == 1);
  CHECK_THROWS_AS(eval_points_sphere(0, 1.0), std::invalid_argument);
}

TEST_CASE("resonance tables") {
  const auto s = resonance_table(Geometry::sphere);
  CHECK(std::find(s.begin(), s.end(), 4.4934) != s.end());
  CHECK(s.size() == 3);
  const auto c = resonance_table(Geometry::cube, 6.0);
  REQUIRE(c.size() >= 2);
  CHECK(c[0] == doctest::Approx(4.4429).epsilon(1e-4));
  CHECK(c[1] == doctest::Approx(5.4414).epsilon(1e-4));
  CHECK(std::is_sorted(c.begin(), c.end()));
  CHECK(resonance_table(Geometry::cube, 4.0).empty());
  CHECK(parse_geometry("cube") == Geometry::cube);
  CHECK(to_string(Geometry::sphere) == "sphere");
  CHECK_THROWS_AS(parse_geometry("torus"), std::invalid_argument);
}

TEST_CASE("sweep CSV rows") {
  SweepRecord r;
  r.geom = "sphere";
  r.h = 0.15;
  r.kappa = 4.4934;
  r.kappa_prime = 4.4934;
  r.eta = -20.19;
  r.cond_cfie = 2.5;
  r.cond_efie = 1234.5;
  r.iters_cfie = 17;
  r.iters_efie = 300;
  CHECK(to_csv_row(r) == "sphere,0.15,4.4934,4.4934,-20.19,2.5,1234.5,17,300,");
  r.err_h = 0.0125;
  CHECK(to_csv_row(r) == "sphere,0.15,4.4934,4.4934,-20.19,2.5,1234.5,17,300,0.0125");
  std::ostringstream os;
  write_sweep_csv({r}, os);
  CHECK(os.str() == std::string(sweep_csv_header) + "\n" + to_csv_row(r) + "\n");
}

TEST_CASE("BLAS kernel selection") {
  const std::string preferred = preferred_blas_core();
  CHECK((preferred.empty() || preferred == "SkylakeX" || preferred == "Haswell"));
  // the test runner re-executes itself with the preferred core when OpenBLAS
  // fell back to a generic one, so a forced core must be the one in use
  if (const char* forced = std::getenv("OPENBLAS_CORETYPE"); forced && !blas_core_name().empty()) {
    std::string a = forced, b = blas_core_name();
    for (auto* s : {&a, &b})
      for (char& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    CHECK(a == b);
  }
}
