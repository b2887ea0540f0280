#pragma once

#include <functional>
#include <vector>

#include "cfiebem/types.hpp"

namespace cfiebem {

using LinearMap = std::function<ComplexVector(const ComplexVector&)>;

struct GmresResult {
  ComplexVector x;
  int iterations = 0;
  bool converged = false;
  /// Relative residual estimates ||r_k|| / ||b||, starting with k = 0.
  std::vector<double> residuals;
};

/// GMRES with modified Gram-Schmidt Arnoldi (one reorthogonalization pass)
/// and Givens rotations. restart <= 0 means no restart.
GmresResult gmres(const LinearMap& apply, const ComplexVector& b, const ComplexVector& x0, double tol, int max_iter,
                  int restart = 0);

}  // namespace cfiebem
