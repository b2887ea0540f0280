#include "cfiebem/gmres.hpp"

#include <cmath>
#include <stdexcept>

namespace cfiebem {
namespace {

// Rotation zeroing b in (a, b): [c s; -conj(s) c] with real c.
void make_givens(cplx a, cplx b, double& c, cplx& s) {
  const double na = std::abs(a);
  const double nb = std::abs(b);
  if (nb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0) {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double nrm = std::hypot(na, nb);
  c = na / nrm;
  s = (a / na) * std::conj(b) / nrm;
}

}  // namespace

GmresResult gmres(const LinearMap& apply, const ComplexVector& b, const ComplexVector& x0, double tol, int max_iter,
                  int restart) {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("gmres: tol must lie in (0,1)");
  if (max_iter < 0) throw std::invalid_argument("gmres: negative max_iter");
  const Eigen::Index n = b.size();
  if (x0.size() != n) throw std::invalid_argument("gmres: x0 size mismatch");

  GmresResult res;
  res.x = x0;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.x.setZero();
    res.converged = true;
    res.residuals.push_back(0.0);
    return res;
  }
  const int m = restart > 0 ? restart : std::max(1, max_iter);

  ComplexVector r = b - apply(res.x);
  double rnorm = r.norm();
  res.residuals.push_back(rnorm / bnorm);
  if (rnorm <= tol * bnorm) {
    res.converged = true;
    return res;
  }

  while (res.iterations < max_iter) {
    const int kmax = std::min<int>(m, max_iter - res.iterations);
    ComplexDenseMatrix V(n, kmax + 1);
    ComplexDenseMatrix H = ComplexDenseMatrix::Zero(kmax + 1, kmax);
    std::vector<double> cs(kmax);
    std::vector<cplx> sn(kmax);
    ComplexVector g = ComplexVector::Zero(kmax + 1);
    g[0] = rnorm;
    V.col(0) = r / rnorm;

    int k = 0;
    bool done = false;
    while (k < kmax) {
      ComplexVector w = apply(V.col(k));
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j <= k; ++j) {
          const cplx h = V.col(j).dot(w);
          H(j, k) += h;
          w -= h * V.col(j);
        }
      }
      const double hn = w.norm();
      H(k + 1, k) = hn;
      for (int j = 0; j < k; ++j) {
        const cplx t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
        H(j + 1, k) = -std::conj(sn[j]) * H(j, k) + cs[j] * H(j + 1, k);
        H(j, k) = t;
      }
      make_givens(H(k, k), H(k + 1, k), cs[k], sn[k]);
      H(k, k) = cs[k] * H(k, k) + sn[k] * H(k + 1, k);
      H(k + 1, k) = 0.0;
      g[k + 1] = -std::conj(sn[k]) * g[k];
      g[k] = cs[k] * g[k];
      ++k;
      ++res.iterations;
      res.residuals.push_back(std::abs(g[k]) / bnorm);
      if (std::abs(g[k]) <= tol * bnorm) {
        done = true;
        break;
      }
      if (hn == 0.0) break;  // lucky breakdown
      V.col(k) = w / hn;
    }

    const ComplexVector y =
        H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    res.x += V.leftCols(k) * y;
    r = b - apply(res.x);
    rnorm = r.norm();
    // The Givens estimate can drift from the true residual; restart on drift.
    if (rnorm <= tol * bnorm || (done && rnorm <= 10.0 * tol * bnorm)) {
      res.converged = true;
      break;
    }
    if (!done && k < kmax) break;  // breakdown without convergence
  }
  return res;
}

}  // namespace cfiebem
