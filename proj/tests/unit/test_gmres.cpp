#include <random>

#include "cfiebem/gmres.hpp"
#include "doctest.h"

using namespace cfiebem;

namespace {

ComplexDenseMatrix random_matrix(int n, unsigned seed, double shift) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexDenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(d(gen), d(gen)) / std::sqrt(2.0 * n);
  a.diagonal().array() += shift;
  return a;
}

ComplexVector random_vector(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(d(gen), d(gen));
  return v;
}

LinearMap as_map(const ComplexDenseMatrix& a) {
  return [&a](const ComplexVector& x) { return ComplexVector(a * x); };
}

}  // namespace

TEST_CASE("solves a random well conditioned system") {
  const int n = 60;
  const ComplexDenseMatrix a = random_matrix(n, 1, 2.0);
  const ComplexVector b = random_vector(n, 2);
  const GmresResult r = gmres(as_map(a), b, ComplexVector::Zero(n), 1e-12, 200);
  CHECK(r.converged);
  const ComplexVector x = a.partialPivLu().solve(b);
  CHECK((r.x - x).norm() < 1e-10 * x.norm());
  CHECK((a * r.x - b).norm() <= 1e-12 * b.norm() * 1.0001);
  REQUIRE(r.residuals.size() == static_cast<std::size_t>(r.iterations) + 1);
  CHECK(r.residuals.front() == doctest::Approx(1.0));
  for (std::size_t k = 1; k < r.residuals.size(); ++k) CHECK(r.residuals[k] <= r.residuals[k - 1] * (1 + 1e-12));
}

TEST_CASE("terminates after as many steps as distinct eigenvalues") {
  const int n = 40;
  ComplexDenseMatrix a = ComplexDenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = cplx(1.0 + i % 3, 0.5 * (i % 3));
  const ComplexVector b = random_vector(n, 3);
  const GmresResult r = gmres(as_map(a), b, ComplexVector::Zero(n), 1e-12, 100);
  CHECK(r.converged);
  CHECK(r.iterations <= 3);
  CHECK((a * r.x - b).norm() < 1e-11 * b.norm());
}

TEST_CASE("restarted GMRES reaches the same solution") {
  const int n = 80;
  const ComplexDenseMatrix a = random_matrix(n, 5, 3.0);
  const ComplexVector b = random_vector(n, 6);
  const GmresResult full = gmres(as_map(a), b, ComplexVector::Zero(n), 1e-11, 500);
  const GmresResult rs = gmres(as_map(a), b, ComplexVector::Zero(n), 1e-11, 500, 10);
  CHECK(full.converged);
  CHECK(rs.converged);
  CHECK(rs.iterations >= full.iterations);
  CHECK((rs.x - full.x).norm() < 1e-9 * full.x.norm());
}

TEST_CASE("initial guesses and trivial right-hand sides") {
  const int n = 20;
  const ComplexDenseMatrix a = random_matrix(n, 7, 2.0);
  const ComplexVector b = random_vector(n, 8);
  const GmresResult zero = gmres(as_map(a), ComplexVector::Zero(n), ComplexVector::Zero(n), 1e-10, 50);
  CHECK(zero.converged);
  CHECK(zero.iterations == 0);
  CHECK(zero.x.norm() == 0.0);

  const ComplexVector x = a.partialPivLu().solve(b);
  const GmresResult exact = gmres(as_map(a), b, x, 1e-10, 50);
  CHECK(exact.converged);
  CHECK(exact.iterations == 0);

  const GmresResult warm = gmres(as_map(a), b, x + 1e-6 * random_vector(n, 9), 1e-10, 50);
  const GmresResult cold = gmres(as_map(a), b, ComplexVector::Zero(n), 1e-10, 50);
  CHECK(warm.converged);
  CHECK(warm.iterations < cold.iterations);
}

TEST_CASE("reports non-convergence within the iteration budget") {
  const int n = 50;
  const ComplexDenseMatrix a = random_matrix(n, 10, 0.0);
  const ComplexVector b = random_vector(n, 11);
  const GmresResult r = gmres(as_map(a), b, ComplexVector::Zero(n), 1e-12, 5);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
}

TEST_CASE("argument validation") {
  const ComplexDenseMatrix a = ComplexDenseMatrix::Identity(4, 4);
  const ComplexVector b = ComplexVector::Ones(4);
  CHECK_THROWS_AS(gmres(as_map(a), b, ComplexVector::Zero(4), 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(gmres(as_map(a), b, ComplexVector::Zero(4), 1.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(gmres(as_map(a), b, ComplexVector::Zero(3), 1e-8, 10), std::invalid_argument);
  CHECK_THROWS_AS(gmres(as_map(a), b, ComplexVector::Zero(4), 1e-8, -1), std::invalid_argument);
}
