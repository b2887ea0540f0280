#include <memory>
#include <random>

#include "cfiebem/cfie.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cfiebem;

namespace {

MeshPtr small_sphere() {
  static MeshPtr m = std::make_shared<const TriangleMesh>(make_icosphere(1.0, 2));
  return m;
}

const CfieSystem& system_at_resonance() {
  static const CfieSystem sys = CfieSystem::assemble(small_sphere(), Wavenumber(4.4934, 4.4934), CouplingParameter(-4.4934 * 4.4934));
  return sys;
}

ComplexVector random_vector(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(d(gen), d(gen));
  return v;
}

const PlaneWave x_wave(double kappa) { return PlaneWave(Vec3(1, 0, 0), Vec3(0, 0, 1), kappa); }

}  // namespace

TEST_CASE("plane wave field and curl") {
  const PlaneWave w(Vec3(0, 1, 0), Vec3(1, 0, 0), 2.0, 1.5);
  const Vec3 x(0.3, -0.1, 0.4);
  CHECK(std::abs(w.field(x)[1] - 1.5 * std::exp(I * 0.6)) < 1e-15);
  const double h = 1e-6;
  // curl by central differences
  CVec3 curl = CVec3::Zero();
  for (int c = 0; c < 3; ++c) {
    Vec3 e = Vec3::Zero();
    e[c] = h;
    const CVec3 d = (w.field(x + e) - w.field(x - e)) / (2 * h);
    curl[(c + 2) % 3] += d[(c + 1) % 3];
    curl[(c + 1) % 3] -= d[(c + 2) % 3];
  }
  CHECK((curl - w.curl(x)).norm() < 1e-8);
  CHECK_THROWS_AS(PlaneWave(Vec3(1, 0, 0), Vec3(1, 0, 0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PlaneWave(Vec3(2, 0, 0), Vec3(0, 0, 1), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PlaneWave(Vec3(1, 0, 0), Vec3(0, 0, 1), -1.0), std::invalid_argument);
}

TEST_CASE("right-hand side against adaptive integration") {
  const auto rt0 = build_rt0_space(small_sphere());
  const PlaneWave w = x_wave(3.0);
  const ComplexVector b = assemble_rhs(w, *rt0, QuadratureOptions{});
  const TriangleMesh& m = *small_sphere();
  double err = 0.0;
  for (int dof = 0; dof < rt0->dof_count(); ++dof) {
    cplx ref = 0.0;
    for (int t : rt0->support(dof)) {
      const oracle::Tri tri{m.corner(t, 0), m.corner(t, 1), m.corner(t, 2)};
      const LocalShape* s = nullptr;
      for (const LocalShape& sh : rt0->shapes(t))
        if (sh.dof == dof) s = &sh;
      REQUIRE(s != nullptr);
      auto integrand = [&](const Vec3& x, bool imag) {
        const cplx v = (s->alpha + s->beta * x).cast<cplx>().dot(w.field(x));  // real basis, no conjugation effect
        return imag ? -v.imag() : -v.real();
      };
      ref += cplx(oracle::adaptive_triangle([&](const Vec3& x) { return integrand(x, false); }, tri, 1e-12),
                  oracle::adaptive_triangle([&](const Vec3& x) { return integrand(x, true); }, tri, 1e-12));
    }
    err = std::max(err, std::abs(b[dof] - ref));
  }
  CHECK(err < 1e-5 * b.cwiseAbs().maxCoeff());
  const ComplexVector zero = assemble_rhs(PlaneWave(Vec3(1, 0, 0), Vec3(0, 0, 1), 3.0, 0.0), *rt0, QuadratureOptions{});
  CHECK(zero.norm() == 0.0);
}

TEST_CASE("matrix-free Schur operator agrees with the densified operator") {
  const CfieSystem& sys = system_at_resonance();
  const int n = sys.size();
  REQUIRE(n == small_sphere()->num_edges());
  const ComplexDenseMatrix l = sys.dense_operator();
  for (unsigned seed : {1u, 2u, 3u}) {
    const ComplexVector xi = random_vector(n, seed);
    const ComplexVector a = schur_apply(sys, xi);
    CHECK((a - l * xi).norm() < 1e-11 * a.norm());
    CHECK((sys.apply(xi) - a).norm() == 0.0);
  }
  // explicit block product
  const ComplexDenseMatrix ref =
      (sys.M() + sys.Z()) * sys.G().partialPivLu().solve(sys.S()) + sys.C() * sys.G().partialPivLu().solve(sys.K());
  CHECK((l - ref).norm() < 1e-11 * ref.norm());
  const ComplexDenseMatrix p = sys.preconditioned_operator();
  CHECK((sys.G().transpose() * p - l).norm() < 1e-11 * l.norm());
  // linearity and zero
  CHECK(schur_apply(sys, ComplexVector::Zero(n)).norm() == 0.0);
  const ComplexVector u = random_vector(n, 4), v = random_vector(n, 5);
  CHECK((schur_apply(sys, 2.0 * u + I * v) - 2.0 * schur_apply(sys, u) - I * schur_apply(sys, v)).norm() <
        1e-12 * schur_apply(sys, u).norm());
  CHECK_THROWS_AS(sys.apply(ComplexVector::Zero(n + 1)), std::invalid_argument);
}

TEST_CASE("Gram solves") {
  const CfieSystem& sys = system_at_resonance();
  const ComplexVector r = random_vector(sys.size(), 6);
  CHECK((sys.G() * sys.solve_gram(r) - r).norm() < 1e-11 * r.norm());
  CHECK((sys.G().transpose() * sys.solve_gram_transpose(r) - r).norm() < 1e-11 * r.norm());
  const ComplexDenseMatrix rm = ComplexDenseMatrix::Identity(sys.size(), sys.size());
  CHECK((sys.G() * sys.solve_gram(rm) - rm).norm() < 1e-10 * rm.norm());
  CHECK((sys.G().transpose() * sys.solve_gram_transpose(rm) - rm).norm() < 1e-10 * rm.norm());
}

TEST_CASE("solve at the first resonance") {
  const CfieSystem& sys = system_at_resonance();
  const ComplexVector b = assemble_rhs(x_wave(4.4934), *sys.rt0(), sys.options().quad);
  const CfieSolution s = solve(sys, b, 1e-10, 500);
  CHECK(s.block_residual <= 1e-9);
  CHECK(s.iterations > 0);
  CHECK(s.iterations < 200);
  CHECK(s.xi.space() == sys.bc());
  CHECK(s.phi.space() == sys.rt0());
  CHECK(block_residual(sys, b, s.xi.coefficients(), s.phi.coefficients(), s.psi.coefficients()) ==
        doctest::Approx(s.block_residual));
  // the three block rows hold
  const ComplexVector& xi = s.xi.coefficients();
  CHECK((sys.G() * s.phi.coefficients() - sys.S() * xi).norm() < 1e-10 * (sys.S() * xi).norm());
  CHECK((sys.G() * s.psi.coefficients() - sys.K() * xi).norm() < 1e-10 * (sys.K() * xi).norm());
  const ComplexVector row1 = (sys.M() + sys.Z()) * s.phi.coefficients() + sys.C() * s.psi.coefficients() - b;
  CHECK(row1.norm() < 1e-9 * b.norm());

  // a different starting vector lands on the same solution
  const CfieSolution s2 = solve(sys, b, 1e-10, 500, random_vector(sys.size(), 9));
  CHECK((s2.xi.coefficients() - xi).norm() < 1e-7 * xi.norm());

  // perturbing the density increases the block residual
  const ComplexVector bad = xi + 1e-3 * xi.norm() / std::sqrt(double(xi.size())) * random_vector(xi.size(), 10);
  CHECK(block_residual(sys, b, bad, s.phi.coefficients(), s.psi.coefficients()) > 1e-6);
}

TEST_CASE("zero data gives the zero solution") {
  const CfieSystem& sys = system_at_resonance();
  const CfieSolution s = solve(sys, ComplexVector::Zero(sys.size()), 1e-8, 50);
  CHECK(s.xi.coefficients().norm() == 0.0);
  CHECK(s.phi.coefficients().norm() == 0.0);
  CHECK(s.iterations == 0);
}

TEST_CASE("with_eta shares geometry blocks") {
  const CfieSystem& sys = system_at_resonance();
  const CfieSystem other = sys.with_eta(CouplingParameter(5.0));
  CHECK(other.eta().eta == 5.0);
  CHECK(&other.S() == &sys.S());
  CHECK(&other.G() == &sys.G());
  CHECK((other.M() - sys.M()).norm() > 0.0);
  const CfieSystem fresh = CfieSystem::assemble(small_sphere(), sys.wavenumber(), CouplingParameter(5.0));
  CHECK((fresh.M() - other.M()).norm() < 1e-13 * fresh.M().norm());
  CHECK((fresh.Z() - other.Z()).norm() < 1e-13 * fresh.Z().norm());
}

TEST_CASE("solver failures carry the residual history") {
  const CfieSystem& sys = system_at_resonance();
  const ComplexVector b = assemble_rhs(x_wave(4.4934), *sys.rt0(), sys.options().quad);
  try {
    (void)solve(sys, b, 1e-12, 2);
    FAIL("expected SolveFailure");
  } catch (const SolveFailure& f) {
    CHECK_FALSE(f.residuals().empty());
  }
  CHECK_THROWS_AS(solve(sys, b, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(solve(sys, ComplexVector::Zero(3), 1e-8, 10), std::invalid_argument);
  CHECK_THROWS_AS(CfieSystem::assemble(nullptr, Wavenumber(1, 1), CouplingParameter(1)), std::invalid_argument);
}

TEST_CASE("EFIE reference at a regular frequency") {
  const auto rt0 = build_rt0_space(small_sphere());
  const EfieReference efie = build_efie_reference(1.0, rt0);
  CHECK(efie.matrix.rows() == rt0->dof_count());
  const ComplexVector b = assemble_rhs(x_wave(1.0), *rt0, QuadratureOptions{});
  const GmresResult r = efie.solve(b, 1e-8, 500);
  CHECK(r.converged);
  CHECK((efie.matrix * r.x - b).norm() < 1e-7 * b.norm());
  CHECK_THROWS_AS(build_efie_reference(0.0, rt0), std::invalid_argument);
}
