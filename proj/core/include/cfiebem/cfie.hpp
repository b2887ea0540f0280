#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "cfiebem/gmres.hpp"
#include "cfiebem/operators.hpp"

namespace cfiebem {

/// amplitude * polarization * exp(i kappa direction . x)
struct PlaneWave {
  Vec3 polarization;
  Vec3 direction;
  double kappa;
  double amplitude = 1.0;

  PlaneWave(const Vec3& polarization, const Vec3& direction, double kappa, double amplitude = 1.0);

  [[nodiscard]] CVec3 field(const Vec3& x) const;
  [[nodiscard]] CVec3 curl(const Vec3& x) const;
};

/// b_m = -int (u_m x n) . (e_in x n), per-triangle Gauss rule of order
/// quad.regular_order + 2.
ComplexVector assemble_rhs(const PlaneWave& wave, const BasisSpace& test, const QuadratureOptions& quad);

/// Block system
///   (M+Z) phi + C psi = b,   G phi = S xi,   G psi = K xi
/// with its Schur complement L = (M+Z) G^{-1} S + C G^{-1} K acting on xi.
/// xi lives on the BC space, phi and psi on RT0. Immutable once assembled.
class CfieSystem {
 public:
  static CfieSystem assemble(const MeshPtr& mesh, const Wavenumber& k, const CouplingParameter& eta,
                             const AssemblyOptions& opt = {});

  /// Same geometry and wavenumbers, different eta; shares every eta-free block.
  [[nodiscard]] CfieSystem with_eta(const CouplingParameter& eta) const;

  [[nodiscard]] const Wavenumber& wavenumber() const { return blocks_->k; }
  [[nodiscard]] const CouplingParameter& eta() const { return eta_; }
  [[nodiscard]] int size() const { return static_cast<int>(blocks_->G.rows()); }

  [[nodiscard]] const RefinedMesh& refined() const { return blocks_->refined; }
  [[nodiscard]] const SpacePtr& rt0() const { return blocks_->rt0; }
  [[nodiscard]] const SpacePtr& bc() const { return blocks_->bc; }
  [[nodiscard]] const AssemblyOptions& options() const { return blocks_->opt; }

  [[nodiscard]] const ComplexDenseMatrix& G() const { return blocks_->G; }
  [[nodiscard]] const ComplexDenseMatrix& M() const { return M_; }
  [[nodiscard]] const ComplexDenseMatrix& Z() const { return Z_; }
  [[nodiscard]] const ComplexDenseMatrix& C() const { return blocks_->C; }
  [[nodiscard]] const ComplexDenseMatrix& S() const { return blocks_->S; }
  [[nodiscard]] const ComplexDenseMatrix& K() const { return blocks_->K; }

  [[nodiscard]] ComplexVector solve_gram(const ComplexVector& rhs) const;
  [[nodiscard]] ComplexDenseMatrix solve_gram(const ComplexDenseMatrix& rhs) const;
  [[nodiscard]] ComplexVector solve_gram_transpose(const ComplexVector& rhs) const;
  [[nodiscard]] ComplexDenseMatrix solve_gram_transpose(const ComplexDenseMatrix& rhs) const;

  /// L xi without forming L.
  [[nodiscard]] ComplexVector apply(const ComplexVector& xi) const;
  /// L, densified.
  [[nodiscard]] ComplexDenseMatrix dense_operator() const;
  /// G^{-T} L, densified.
  [[nodiscard]] ComplexDenseMatrix preconditioned_operator() const;

 private:
  struct Blocks {
    Wavenumber k;
    AssemblyOptions opt;
    RefinedMesh refined;
    SpacePtr rt0;
    SpacePtr bc;
    ComplexDenseMatrix G;
    Eigen::PartialPivLU<RealDenseMatrix> lu;  // G has real entries
    SingleLayerBlocks yukawa;
    SingleLayerBlocks difference;
    ComplexDenseMatrix C;
    ComplexDenseMatrix S;
    ComplexDenseMatrix K;
  };

  CfieSystem(std::shared_ptr<const Blocks> blocks, const CouplingParameter& eta);

  std::shared_ptr<const Blocks> blocks_;
  CouplingParameter eta_;
  ComplexDenseMatrix M_;
  ComplexDenseMatrix Z_;
};

ComplexVector schur_apply(const CfieSystem& sys, const ComplexVector& xi);

struct CfieSolution {
  SurfaceDensity xi;
  SurfaceDensity phi;
  SurfaceDensity psi;
  int iterations;
  std::vector<double> residuals;
  /// ||block residual|| / ||b|| of the full three-row system.
  double block_residual;
};

class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  [[nodiscard]] const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Full GMRES on G^{-T} L xi = G^{-T} b, then phi = G^{-1} S xi and
/// psi = G^{-1} K xi. Throws SolveFailure when the block residual stays
/// above 10 tol within max_iter iterations.
CfieSolution solve(const CfieSystem& sys, const ComplexVector& b, double tol, int max_iter,
                   const ComplexVector& x0 = {});

/// Block residuals of (phi, xi, psi) in the system above, relative to ||b||.
double block_residual(const CfieSystem& sys, const ComplexVector& b, const ComplexVector& xi, const ComplexVector& phi,
                      const ComplexVector& psi);

/// Plain EFIE with sigma = kappa on RT0, for comparison runs.
struct EfieReference {
  double kappa;
  SpacePtr rt0;
  ComplexDenseMatrix matrix;

  [[nodiscard]] GmresResult solve(const ComplexVector& b, double tol, int max_iter) const;
};

EfieReference build_efie_reference(double kappa, const SpacePtr& rt0, const AssemblyOptions& opt = {});

}  // namespace cfiebem
