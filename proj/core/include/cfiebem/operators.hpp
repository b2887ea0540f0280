#pragma once

#include "cfiebem/kernels.hpp"
#include "cfiebem/mesh.hpp"
#include "cfiebem/quadrature.hpp"
#include "cfiebem/spaces.hpp"
#include "cfiebem/types.hpp"

namespace cfiebem {

struct AssemblyOptions {
  QuadratureOptions quad;
  /// Worker threads; each accumulates into a private buffer.
  int jobs = 1;
};

/// Kernel selector for the assembly engine: the Helmholtz kernel G_sigma
/// (Yukawa when sigma is purely imaginary) or the smooth difference
/// G_kappa - G_{i kappa_prime}.
struct KernelSpec {
  enum class Kind { helmholtz, difference };

  Kind kind = Kind::helmholtz;
  cplx sigma = 0.0;
  double kappa = 0.0;
  double kappa_prime = 0.0;

  static KernelSpec helmholtz(cplx sigma);
  static KernelSpec yukawa(double kappa_prime) { return helmholtz(cplx(0.0, kappa_prime)); }
  static KernelSpec difference(double kappa, double kappa_prime);

  [[nodiscard]] bool is_real() const { return kind == Kind::helmholtz && sigma.real() == 0.0; }
  /// Length scale used by the quadrature upgrade rule.
  [[nodiscard]] double wave_scale() const;
};

/// Vector (A) and scalar divergence (V) single-layer blocks from one pass:
///   A_mn = int int K(x,y) v_m(x) . u_n(y),   V_mn = int int K(x,y) div v_m(x) div u_n(y).
/// Test and trial spaces must live on the same mesh object.
struct SingleLayerBlocks {
  ComplexDenseMatrix a;
  ComplexDenseMatrix v;
};
SingleLayerBlocks assemble_single_layer_blocks(const KernelSpec& kernel, const BasisSpace& test,
                                               const BasisSpace& trial, const AssemblyOptions& opt);

/// C_mn = int int v_m(x) . (grad_x K(x,y) x u_n(y)); identical triangles
/// contribute exactly zero and are skipped.
ComplexDenseMatrix assemble_double_layer(const KernelSpec& kernel, const BasisSpace& test, const BasisSpace& trial,
                                         const AssemblyOptions& opt);

ComplexDenseMatrix assemble_vector_single_layer(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                                                const AssemblyOptions& opt);
ComplexDenseMatrix assemble_scalar_single_layer(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                                                const AssemblyOptions& opt);

/// Weak S_sigma = A - sigma^{-2} V. For sigma = i kappa' this is A + V / kappa'^2.
ComplexDenseMatrix assemble_S(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                              const AssemblyOptions& opt);
ComplexDenseMatrix assemble_C(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                              const AssemblyOptions& opt);

/// int (v_m x n) . u_n over the common mesh of both spaces.
ComplexDenseMatrix assemble_pairing(const BasisSpace& test, const BasisSpace& trial);
/// Same-space pairing; antisymmetric.
ComplexDenseMatrix assemble_twisted_pairing(const BasisSpace& space);
/// Mixed Gram matrix, BC test against RT0 trial (RT0 on refined.base).
ComplexDenseMatrix assemble_gram(const BasisSpace& bc, const BasisSpace& rt0, const RefinedMesh& refined);

/// (kappa'^2 + i eta) A + (1 - i eta / kappa^2) V from Yukawa blocks.
ComplexDenseMatrix combine_M(const SingleLayerBlocks& yukawa, const Wavenumber& k, const CouplingParameter& eta);
/// i eta (dA - dV / kappa^2) from difference-kernel blocks.
ComplexDenseMatrix combine_Z(const SingleLayerBlocks& difference, const Wavenumber& k,
                             const CouplingParameter& eta);

ComplexDenseMatrix assemble_M(const Wavenumber& k, const CouplingParameter& eta, const BasisSpace& rt0,
                              const AssemblyOptions& opt);
ComplexDenseMatrix assemble_Z(const Wavenumber& k, const CouplingParameter& eta, const BasisSpace& rt0,
                              const AssemblyOptions& opt);
/// 1/2 (BC pairing) + C_{i kappa'} on BC x BC.
ComplexDenseMatrix assemble_K(double kappa_prime, const BasisSpace& bc, const AssemblyOptions& opt);
/// Double layer with grad (G_kappa - G_{i kappa'}) on RT0 x RT0.
ComplexDenseMatrix assemble_C_delta(const Wavenumber& k, const BasisSpace& rt0, const AssemblyOptions& opt);

}  // namespace cfiebem
