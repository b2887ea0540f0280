#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cfiebem/mesh.hpp"
#include "cfiebem/types.hpp"

namespace cfiebem {

/// Quadrature on the reference triangle. Points are barycentric (l0, l1, l2);
/// weights sum to 1/2.
struct TriangleRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Symmetric rule exact for total degree `order`, 1 <= order <= 10.
/// Cached; the reference stays valid for the program lifetime.
const TriangleRule& gauss_triangle_rule(int order);

/// n-point Gauss-Legendre rule on [0, 1].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
LineRule gauss_legendre_01(int n);

enum class PairCase { identical, common_edge, common_vertex, disjoint };

const char* to_string(PairCase c);

/// Node of a 4-D rule over a pair of reference triangles. Weights sum to 1/4
/// (product of reference areas), so a physical integral is
/// sum w * f * (2 A1) * (2 A2).
struct PairNode {
  Vec3 bary1;
  Vec3 bary2;
  double weight;
};

struct PairRule {
  PairCase kind;
  std::vector<PairNode> nodes;
};

/// Regularized rule for the given case. For the singular cases `order` is
/// the number of Gauss points per direction of the Sauter-Schwab cube; for
/// `disjoint` it is the degree of the tensor triangle rule. The singular
/// rules assume the shared vertices are the leading local vertices of both
/// triangles, in the same order (see PairClassification).
const PairRule& pair_rule(PairCase kind, int order);

/// Case plus local vertex permutations that move the shared vertices to the
/// front, in matching order.
struct PairClassification {
  PairCase kind = PairCase::disjoint;
  std::array<int, 3> perm1{0, 1, 2};
  std::array<int, 3> perm2{0, 1, 2};
};

/// Classification by shared vertex indices (both triangles from one mesh).
PairClassification classify_pair(const Triangle& t1, const Triangle& t2);

/// Classification by coordinates, matching vertices within tol * diameter.
PairClassification classify_pair(const std::array<Vec3, 3>& t1, const std::array<Vec3, 3>& t2,
                                 double tol = 1e-12);

using PairKernel = std::function<cplx(const Vec3&, const Vec3&)>;

/// Integral of kernel(x, y) over T1 x T2 with the rule selected by `pc`.
cplx integrate_pair(const PairKernel& kernel, const std::array<Vec3, 3>& t1,
                    const std::array<Vec3, 3>& t2, const PairClassification& pc, int order);

/// Quadrature settings shared by all assembly routines.
struct QuadratureOptions {
  int singular_order = 4;
  int regular_order = 3;
  /// Pairs farther apart than far_ratio * diameter use far_order.
  double far_ratio = 4.0;
  int far_order = 2;
  /// Raise orders to 5/4 when the Yukawa or Helmholtz scale times the
  /// element diameter exceeds 2.
  bool oscillation_upgrade = true;

  void validate() const;
  /// Orders after the oscillation upgrade for a wavenumber scale and mesh
  /// diameter.
  [[nodiscard]] QuadratureOptions adapted(double wave_scale, double diameter) const;
};

}  // namespace cfiebem
