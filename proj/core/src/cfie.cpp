#include "cfiebem/cfie.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace cfiebem {

namespace {

template <class Solver, class Rhs>
Rhs solve_split(const Solver& lu, const Rhs& rhs) {
  using Real = std::conditional_t<Rhs::ColsAtCompileTime == 1, Eigen::VectorXd, RealDenseMatrix>;
  Rhs out(rhs.rows(), rhs.cols());
  out.real() = Real(lu.solve(Real(rhs.real())));
  if (rhs.imag().isZero(0.0))
    out.imag().setZero();
  else
    out.imag() = Real(lu.solve(Real(rhs.imag())));
  return out;
}

// a * b, with two real products when b happens to be real
ComplexDenseMatrix times(const ComplexDenseMatrix& a, const ComplexDenseMatrix& b) {
  if (!b.imag().isZero(0.0)) return a * b;
  const RealDenseMatrix br = b.real();
  ComplexDenseMatrix out(a.rows(), b.cols());
  out.real() = RealDenseMatrix(a.real()) * br;
  out.imag() = RealDenseMatrix(a.imag()) * br;
  return out;
}

}  // namespace

PlaneWave::PlaneWave(const Vec3& pol, const Vec3& dir, double k, double amp)
    : polarization(pol), direction(dir), kappa(k), amplitude(amp) {
  if (std::abs(pol.norm() - 1.0) > 1e-12 || std::abs(dir.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("PlaneWave: polarization and direction must be unit vectors");
  if (std::abs(pol.dot(dir)) > 1e-12) throw std::invalid_argument("PlaneWave: polarization not transverse");
  if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("PlaneWave: invalid kappa");
}

CVec3 PlaneWave::field(const Vec3& x) const {
  const cplx ph = amplitude * std::exp(I * kappa * direction.dot(x));
  return polarization.cast<cplx>() * ph;
}

CVec3 PlaneWave::curl(const Vec3& x) const {
  const cplx ph = amplitude * std::exp(I * kappa * direction.dot(x));
  return direction.cross(polarization).cast<cplx>() * (I * kappa * ph);
}

ComplexVector assemble_rhs(const PlaneWave& wave, const BasisSpace& test, const QuadratureOptions& quad) {
  quad.validate();
  const TriangleMesh& mesh = *test.mesh();
  const TriangleRule& rule = gauss_triangle_rule(std::min(10, quad.regular_order + 2));
  ComplexVector b = ComplexVector::Zero(test.dof_count());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3& n = mesh.normal(t);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec3& p = rule.points[q];
      const Vec3 x = p[0] * mesh.corner(t, 0) + p[1] * mesh.corner(t, 1) + p[2] * mesh.corner(t, 2);
      const double w = 2.0 * mesh.area(t) * rule.weights[q];
      const CVec3 e = wave.field(x);
      const CVec3 et = e - n.cast<cplx>() * n.cast<cplx>().dot(e);
      for (const LocalShape& s : test.shapes(t)) {
        // (u x n) . (e x n) = u . e_t for tangential u
        const Vec3 u = s.alpha + s.beta * x;
        b[s.dof] -= w * (u.cast<cplx>().transpose() * et)(0);
      }
    }
  }
  return b;
}

CfieSystem::CfieSystem(std::shared_ptr<const Blocks> blocks, const CouplingParameter& eta)
    : blocks_(std::move(blocks)), eta_(eta) {
  M_ = combine_M(blocks_->yukawa, blocks_->k, eta_);
  Z_ = combine_Z(blocks_->difference, blocks_->k, eta_);
}

CfieSystem CfieSystem::assemble(const MeshPtr& mesh, const Wavenumber& k, const CouplingParameter& eta,
                                const AssemblyOptions& opt) {
  if (!mesh) throw std::invalid_argument("CfieSystem: null mesh");
  opt.quad.validate();
  auto b = std::make_shared<Blocks>(Blocks{k, opt, barycentric_refine(mesh), nullptr, nullptr, {}, {}, {}, {}, {}, {},
                                           {}});
  b->rt0 = build_rt0_space(mesh);
  b->bc = build_bc_space(b->refined);
  b->G = assemble_gram(*b->bc, *b->rt0, b->refined);
  if (!b->G.imag().isZero(0.0)) throw std::logic_error("CfieSystem: Gram matrix must be real");
  b->lu.compute(b->G.real());
  const double piv = b->lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double scale = b->lu.matrixLU().diagonal().cwiseAbs().maxCoeff();
  if (!(piv > 1e-13 * scale)) throw std::runtime_error("CfieSystem: Gram matrix is singular");
  b->yukawa = assemble_single_layer_blocks(KernelSpec::yukawa(k.kappa_prime), *b->rt0, *b->rt0, opt);
  b->difference = assemble_single_layer_blocks(KernelSpec::difference(k.kappa, k.kappa_prime), *b->rt0, *b->rt0, opt);
  b->C = assemble_C_delta(k, *b->rt0, opt);
  b->S = assemble_S(cplx(0.0, k.kappa_prime), *b->bc, *b->bc, opt);
  b->K = assemble_K(k.kappa_prime, *b->bc, opt);
  return CfieSystem(std::move(b), eta);
}

CfieSystem CfieSystem::with_eta(const CouplingParameter& eta) const { return CfieSystem(blocks_, eta); }

ComplexVector CfieSystem::solve_gram(const ComplexVector& rhs) const { return solve_split(blocks_->lu, rhs); }
ComplexDenseMatrix CfieSystem::solve_gram(const ComplexDenseMatrix& rhs) const { return solve_split(blocks_->lu, rhs); }
ComplexVector CfieSystem::solve_gram_transpose(const ComplexVector& rhs) const {
  return solve_split(blocks_->lu.transpose(), rhs);
}
ComplexDenseMatrix CfieSystem::solve_gram_transpose(const ComplexDenseMatrix& rhs) const {
  return solve_split(blocks_->lu.transpose(), rhs);
}

ComplexVector CfieSystem::apply(const ComplexVector& xi) const {
  if (xi.size() != size()) throw std::invalid_argument("CfieSystem::apply: size mismatch");
  const ComplexVector phi = solve_gram(ComplexVector(S() * xi));
  const ComplexVector psi = solve_gram(ComplexVector(K() * xi));
  return M_ * phi + Z_ * phi + C() * psi;
}

ComplexDenseMatrix CfieSystem::dense_operator() const {
  const ComplexDenseMatrix GS = solve_gram(S());
  const ComplexDenseMatrix GK = solve_gram(K());
  ComplexDenseMatrix L = times(M_ + Z_, GS);
  L += times(C(), GK);
  return L;
}

ComplexDenseMatrix CfieSystem::preconditioned_operator() const { return solve_gram_transpose(dense_operator()); }

ComplexVector schur_apply(const CfieSystem& sys, const ComplexVector& xi) { return sys.apply(xi); }

double block_residual(const CfieSystem& sys, const ComplexVector& b, const ComplexVector& xi, const ComplexVector& phi,
                      const ComplexVector& psi) {
  const double bn = b.norm();
  const ComplexVector r1 = sys.M() * phi + sys.Z() * phi + sys.C() * psi - b;
  const ComplexVector r2 = sys.G() * phi - sys.S() * xi;
  const ComplexVector r3 = sys.G() * psi - sys.K() * xi;
  const double rn = std::sqrt(r1.squaredNorm() + r2.squaredNorm() + r3.squaredNorm());
  if (bn == 0.0) return rn;
  return rn / bn;
}

CfieSolution solve(const CfieSystem& sys, const ComplexVector& b, double tol, int max_iter, const ComplexVector& x0) {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("solve: tol must lie in (0,1)");
  const int n = sys.size();
  if (b.size() != n) throw std::invalid_argument("solve: rhs size mismatch");
  if (x0.size() != 0 && x0.size() != n) throw std::invalid_argument("solve: x0 size mismatch");

  const LinearMap op = [&sys](const ComplexVector& v) { return sys.solve_gram_transpose(sys.apply(v)); };
  const ComplexVector pb = sys.solve_gram_transpose(b);
  const ComplexVector start = x0.size() == n ? x0 : ComplexVector::Zero(n);

  // The Krylov residual is measured in the G^{-T} metric; tighten until the
  // unpreconditioned block residual also meets 10 tol.
  GmresResult g;
  std::vector<double> history;
  int used = 0;
  double inner = tol;
  ComplexVector xi = start;
  ComplexVector phi, psi;
  double res = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    g = gmres(op, pb, xi, inner, max_iter - used);
    used += g.iterations;
    history.insert(history.end(), g.residuals.begin() + (attempt == 0 ? 0 : 1), g.residuals.end());
    xi = g.x;
    phi = sys.solve_gram(ComplexVector(sys.S() * xi));
    psi = sys.solve_gram(ComplexVector(sys.K() * xi));
    res = block_residual(sys, b, xi, phi, psi);
    if (b.norm() == 0.0 || res <= 10.0 * tol) {
      return CfieSolution{SurfaceDensity(sys.bc(), xi), SurfaceDensity(sys.rt0(), phi), SurfaceDensity(sys.rt0(), psi),
                          used, std::move(history), res};
    }
    if (!g.converged || used >= max_iter) break;
    inner = std::max(inner * 0.1, 1e-15);
  }
  throw SolveFailure("solve: GMRES did not reach the requested block residual (" + std::to_string(res) + " after " +
                         std::to_string(used) + " iterations)",
                     std::move(history));
}

GmresResult EfieReference::solve(const ComplexVector& b, double tol, int max_iter) const {
  const LinearMap op = [this](const ComplexVector& v) { return ComplexVector(matrix * v); };
  return gmres(op, b, ComplexVector::Zero(b.size()), tol, max_iter);
}

EfieReference build_efie_reference(double kappa, const SpacePtr& rt0, const AssemblyOptions& opt) {
  if (!(kappa > 0.0)) throw std::invalid_argument("build_efie_reference: kappa must be positive");
  if (!rt0) throw std::invalid_argument("build_efie_reference: null space");
  return EfieReference{kappa, rt0, assemble_S(cplx(kappa, 0.0), *rt0, *rt0, opt)};
}

}  // namespace cfiebem
