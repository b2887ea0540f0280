#include "cfiebem/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace cfiebem {
namespace {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Arr = Eigen::Array<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using V3 = Eigen::Matrix<S, 3, 1>;

constexpr double four_pi = 4.0 * pi;

struct YukawaKernel {
  using Scalar = double;
  double kp;

  [[nodiscard]] double value(double r) const { return YukawaRadial{kp}.value(r); }
  [[nodiscard]] double grad(double r) const { return YukawaRadial{kp}.grad_factor(r); }
  void block_value(const Eigen::ArrayXXd& r, Arr<double>& out) const { out = (-kp * r).exp() / (four_pi * r); }
  void block_grad(const Eigen::ArrayXXd& r, Arr<double>& out) const {
    out = -(-kp * r).exp() * (kp * r + 1.0) / (four_pi * r.cube());
  }
};

struct HelmholtzKernel {
  using Scalar = cplx;
  cplx sigma;

  [[nodiscard]] cplx value(double r) const { return HelmholtzRadial{sigma}.value(r); }
  [[nodiscard]] cplx grad(double r) const { return HelmholtzRadial{sigma}.grad_factor(r); }
  void block_value(const Eigen::ArrayXXd& r, Arr<cplx>& out) const {
    const Eigen::ArrayXXd amp = (-sigma.imag() * r).exp() / (four_pi * r);
    const Eigen::ArrayXXd ph = sigma.real() * r;
    out.resize(r.rows(), r.cols());
    out.real() = amp * ph.cos();
    out.imag() = amp * ph.sin();
  }
  void block_grad(const Eigen::ArrayXXd& r, Arr<cplx>& out) const {
    // e^{i sigma r} (i sigma r - 1) / (4 pi r^3)
    const Eigen::ArrayXXd amp = (-sigma.imag() * r).exp() / (four_pi * r.cube());
    const Eigen::ArrayXXd ph = sigma.real() * r;
    const Eigen::ArrayXXd c = ph.cos(), s = ph.sin();
    const Eigen::ArrayXXd fr = -1.0 - sigma.imag() * r;
    const Eigen::ArrayXXd fi = sigma.real() * r;
    out.resize(r.rows(), r.cols());
    out.real() = amp * (c * fr - s * fi);
    out.imag() = amp * (c * fi + s * fr);
  }
};

struct DifferenceKernel {
  using Scalar = cplx;
  double k, kp;

  [[nodiscard]] cplx value(double r) const { return DifferenceRadial{k, kp}.value(r); }
  [[nodiscard]] cplx grad(double r) const { return DifferenceRadial{k, kp}.grad_factor(r); }
  // far-field only: r is bounded away from zero, no cancellation guard needed
  void block_value(const Eigen::ArrayXXd& r, Arr<cplx>& out) const {
    const Eigen::ArrayXXd inv = 1.0 / (four_pi * r);
    out.resize(r.rows(), r.cols());
    out.real() = ((k * r).cos() - (-kp * r).exp()) * inv;
    out.imag() = (k * r).sin() * inv;
  }
  void block_grad(const Eigen::ArrayXXd& r, Arr<cplx>& out) const {
    const Eigen::ArrayXXd inv = 1.0 / (four_pi * r.cube());
    const Eigen::ArrayXXd c = (k * r).cos(), s = (k * r).sin();
    const Eigen::ArrayXXd kr = k * r;
    out.resize(r.rows(), r.cols());
    out.real() = (-c - s * kr + (-kp * r).exp() * (kp * r + 1.0)) * inv;
    out.imag() = (-s + c * kr) * inv;
  }
};

enum class Form { single_layer, double_layer };

// One output matrix: sum over terms of sign * test_feature^T K trial_feature.
struct Term {
  int test_feature;
  int trial_feature;
  double sign;
};

// Quadrature points of one rule on every triangle, with per-point basis
// features (weights folded in).
struct PointTable {
  int per_triangle = 0;
  std::vector<double> x, y, z;
  std::vector<int> start;  // entry range per point
  std::vector<int> dof;
  int nfeat = 0;
  std::vector<double> val;  // entry-major, nfeat per entry

  [[nodiscard]] int size() const { return static_cast<int>(x.size()); }
};

enum class Features { single_layer, dl_test, dl_trial };

PointTable make_points(const BasisSpace& space, const TriangleRule& rule, Features kind) {
  const TriangleMesh& mesh = *space.mesh();
  PointTable pt;
  pt.per_triangle = static_cast<int>(rule.weights.size());
  pt.nfeat = kind == Features::single_layer ? 4 : 6;
  const std::size_t np = static_cast<std::size_t>(mesh.num_triangles()) * pt.per_triangle;
  pt.x.reserve(np);
  pt.y.reserve(np);
  pt.z.reserve(np);
  pt.start.reserve(np + 1);
  pt.start.push_back(0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double jac = 2.0 * mesh.area(t);
    for (std::size_t k = 0; k < rule.weights.size(); ++k) {
      const Vec3& b = rule.points[k];
      const Vec3 x = b[0] * mesh.corner(t, 0) + b[1] * mesh.corner(t, 1) + b[2] * mesh.corner(t, 2);
      const double w = rule.weights[k] * jac;
      pt.x.push_back(x[0]);
      pt.y.push_back(x[1]);
      pt.z.push_back(x[2]);
      for (const LocalShape& s : space.shapes(t)) {
        const Vec3 v = s.alpha + s.beta * x;
        pt.dof.push_back(s.dof);
        switch (kind) {
          case Features::single_layer:
            for (int c = 0; c < 3; ++c) pt.val.push_back(w * v[c]);
            pt.val.push_back(w * 2.0 * s.beta);
            break;
          case Features::dl_test: {
            const Vec3 vx = v.cross(x);
            for (int c = 0; c < 3; ++c) pt.val.push_back(w * vx[c]);
            for (int c = 0; c < 3; ++c) pt.val.push_back(w * v[c]);
            break;
          }
          case Features::dl_trial: {
            const Vec3 xv = x.cross(v);
            for (int c = 0; c < 3; ++c) pt.val.push_back(w * v[c]);
            for (int c = 0; c < 3; ++c) pt.val.push_back(w * xv[c]);
            break;
          }
        }
      }
      pt.start.push_back(static_cast<int>(pt.dof.size()));
    }
  }
  return pt;
}

struct Geometry {
  std::vector<Vec3> centroid;
  std::vector<double> diameter;
  double max_diameter = 0.0;
};

Geometry triangle_geometry(const TriangleMesh& mesh) {
  Geometry g;
  g.centroid.reserve(mesh.num_triangles());
  g.diameter.reserve(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    g.centroid.push_back(mesh.centroid(t));
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d = std::max(d, (mesh.corner(t, i) - mesh.corner(t, (i + 1) % 3)).norm());
    g.diameter.push_back(d);
    g.max_diameter = std::max(g.max_diameter, d);
  }
  return g;
}

// Pairs whose centroid distance is below ratio * max(diameters), found with
// a uniform grid. ratio >= 2 guarantees every touching pair is included.
std::vector<std::vector<int>> near_lists(const Geometry& g, double ratio) {
  const int n = static_cast<int>(g.centroid.size());
  const double cell = ratio * g.max_diameter;
  auto key_of = [&](const Vec3& c, int dx, int dy, int dz) {
    const auto ix = static_cast<std::int64_t>(std::floor(c[0] / cell)) + dx;
    const auto iy = static_cast<std::int64_t>(std::floor(c[1] / cell)) + dy;
    const auto iz = static_cast<std::int64_t>(std::floor(c[2] / cell)) + dz;
    return (ix * 73856093) ^ (iy * 19349663) ^ (iz * 83492791);
  };
  std::unordered_map<std::int64_t, std::vector<int>> grid;
  for (int t = 0; t < n; ++t) grid[key_of(g.centroid[t], 0, 0, 0)].push_back(t);
  std::vector<std::vector<int>> near(n);
  for (int t = 0; t < n; ++t) {
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = grid.find(key_of(g.centroid[t], dx, dy, dz));
          if (it == grid.end()) continue;
          for (int s : it->second) {
            const double cut = ratio * std::max(g.diameter[t], g.diameter[s]);
            if ((g.centroid[t] - g.centroid[s]).norm() < cut) near[t].push_back(s);
          }
        }
      }
    }
    // hash collisions can repeat cells
    std::sort(near[t].begin(), near[t].end());
    near[t].erase(std::unique(near[t].begin(), near[t].end()), near[t].end());
  }
  return near;
}

double rdot(const Vec3& a, const Vec3& b) { return a.dot(b); }
template <class S>
S rdot(const Vec3& a, const V3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class Kn>
struct Engine {
  using S = typename Kn::Scalar;

  const Kn& kern;
  Form form;
  const BasisSpace& test;
  const BasisSpace& trial;
  QuadratureOptions quad;
  bool symmetric;
  std::vector<std::vector<Term>> terms;  // per output

  // Touching pairs with Sauter-Schwab rules, close pairs with tensor Gauss.
  void near_field(const std::vector<std::vector<int>>& near, int t_begin, int t_end, std::vector<Mat<S>>& out) const {
    const TriangleMesh& mesh = *test.mesh();
    for (int t1 = t_begin; t1 < t_end; ++t1) {
      for (int t2 : near[t1]) {
        if (symmetric && t2 < t1) continue;
        const PairClassification pc = classify_pair(mesh.triangle(t1), mesh.triangle(t2));
        if (form == Form::double_layer && pc.kind == PairCase::identical) continue;
        const PairRule& rule = pc.kind == PairCase::disjoint ? pair_rule(PairCase::disjoint, quad.regular_order)
                                                             : pair_rule(pc.kind, quad.singular_order);
        const double jac = 4.0 * mesh.area(t1) * mesh.area(t2);
        std::array<Vec3, 3> p1, p2;
        for (int k = 0; k < 3; ++k) {
          p1[k] = mesh.corner(t1, pc.perm1[k]);
          p2[k] = mesh.corner(t2, pc.perm2[k]);
        }
        const bool mirror = symmetric && t1 != t2;
        if (form == Form::single_layer) {
          S m0 = 0.0, mxy = 0.0;
          V3<S> mx = V3<S>::Zero(), my = V3<S>::Zero();
          for (const PairNode& nd : rule.nodes) {
            const Vec3 x = nd.bary1[0] * p1[0] + nd.bary1[1] * p1[1] + nd.bary1[2] * p1[2];
            const Vec3 y = nd.bary2[0] * p2[0] + nd.bary2[1] * p2[1] + nd.bary2[2] * p2[2];
            const S kv = kern.value((x - y).norm()) * (nd.weight * jac);
            m0 += kv;
            mx += kv * x.cast<S>();
            my += kv * y.cast<S>();
            mxy += kv * x.dot(y);
          }
          for (const LocalShape& sm : test.shapes(t1)) {
            for (const LocalShape& sn : trial.shapes(t2)) {
              const S a = rdot(sm.alpha, sn.alpha) * m0 + sn.beta * rdot<S>(sm.alpha, my) +
                          sm.beta * rdot<S>(sn.alpha, mx) + sm.beta * sn.beta * mxy;
              const S v = 4.0 * sm.beta * sn.beta * m0;
              if (out[0].size() != 0) out[0](sm.dof, sn.dof) += a;
              if (out.size() > 1 && out[1].size() != 0) out[1](sm.dof, sn.dof) += v;
              if (mirror) {
                if (out[0].size() != 0) out[0](sn.dof, sm.dof) += a;
                if (out.size() > 1 && out[1].size() != 0) out[1](sn.dof, sm.dof) += v;
              }
            }
          }
        } else {
          V3<S> D = V3<S>::Zero(), P = V3<S>::Zero(), Q = V3<S>::Zero();
          for (const PairNode& nd : rule.nodes) {
            const Vec3 x = nd.bary1[0] * p1[0] + nd.bary1[1] * p1[1] + nd.bary1[2] * p1[2];
            const Vec3 y = nd.bary2[0] * p2[0] + nd.bary2[1] * p2[1] + nd.bary2[2] * p2[2];
            const Vec3 d = x - y;
            const S gf = kern.grad(d.norm()) * (nd.weight * jac);
            D += gf * d.cast<S>();
            P += gf * d.cross(y).cast<S>();
            Q += gf * x.cross(d).cast<S>();
          }
          for (const LocalShape& sm : test.shapes(t1)) {
            for (const LocalShape& sn : trial.shapes(t2)) {
              const S c = rdot<S>(sn.alpha.cross(sm.alpha), D) + sn.beta * rdot<S>(sm.alpha, P) +
                          sm.beta * rdot<S>(sn.alpha, Q);
              out[0](sm.dof, sn.dof) += c;
              if (mirror) out[0](sn.dof, sm.dof) += c;
            }
          }
        }
      }
    }
  }

  // Far pairs: blocked products K = kernel(points x points) contracted with
  // the sparse per-point basis features. Near pairs are masked out of K.
  // For symmetric forms only trial points after the block are visited and
  // their contribution is mirrored.
  void far_field(const PointTable& tp, const PointTable& rp, const std::vector<std::vector<int>>& near, int p_begin,
                 int p_end, std::vector<Mat<S>>& out) const {
    constexpr int block = 32;
    const int np = rp.size();
    const int q_per = rp.per_triangle;
    const int n_trial = trial.dof_count();
    Eigen::ArrayXXd r;
    Arr<S> kb;
    std::vector<Mat<S>> y(rp.nfeat);
    std::vector<char> needed(rp.nfeat, 0);
    for (const auto& ts : terms) {
      for (const Term& t : ts) needed[t.trial_feature] = 1;
    }
    std::vector<int> touched;
    std::vector<char> mark(n_trial, 0);

    auto span = [&](int p0, int b, int q0, int q1, bool mirror) {
      const int nq = q1 - q0;
      if (nq <= 0) return;
      r.resize(b, nq);
      for (int q = 0; q < nq; ++q) {
        for (int i = 0; i < b; ++i) {
          const double dx = tp.x[p0 + i] - rp.x[q0 + q];
          const double dy = tp.y[p0 + i] - rp.y[q0 + q];
          const double dz = tp.z[p0 + i] - rp.z[q0 + q];
          r(i, q) = std::sqrt(dx * dx + dy * dy + dz * dz);
        }
      }
      auto for_masked = [&](auto&& fn) {
        for (int i = 0; i < b; ++i) {
          for (int t2 : near[(p0 + i) / tp.per_triangle]) {
            for (int k = 0; k < q_per; ++k) {
              const int q = t2 * q_per + k - q0;
              if (q >= 0 && q < nq) fn(i, q);
            }
          }
        }
      };
      for_masked([&](int i, int q) { r(i, q) = 1.0; });
      if (form == Form::single_layer) {
        kern.block_value(r, kb);
      } else {
        kern.block_grad(r, kb);
      }
      for_masked([&](int i, int q) { kb(i, q) = S(0.0); });

      touched.clear();
      for (int e = rp.start[q0]; e < rp.start[q1]; ++e) {
        if (!mark[rp.dof[e]]) {
          mark[rp.dof[e]] = 1;
          touched.push_back(rp.dof[e]);
        }
      }
      for (int f = 0; f < rp.nfeat; ++f) {
        if (!needed[f]) continue;
        if (y[f].rows() != b || y[f].cols() != n_trial) y[f].resize(b, n_trial);
        for (int n : touched) y[f].col(n).setZero();
      }
      for (int q = 0; q < nq; ++q) {
        const auto kcol = kb.col(q).matrix();
        for (int e = rp.start[q0 + q]; e < rp.start[q0 + q + 1]; ++e) {
          const int n = rp.dof[e];
          const double* fv = &rp.val[static_cast<std::size_t>(e) * rp.nfeat];
          for (int f = 0; f < rp.nfeat; ++f) {
            if (needed[f]) y[f].col(n).noalias() += fv[f] * kcol;
          }
        }
      }
      for (std::size_t o = 0; o < terms.size(); ++o) {
        if (out[o].size() == 0) continue;
        Mat<S>& dst = out[o];
        for (int n : touched) {
          for (int i = 0; i < b; ++i) {
            const int p = p0 + i;
            for (int e = tp.start[p]; e < tp.start[p + 1]; ++e) {
              const double* fv = &tp.val[static_cast<std::size_t>(e) * tp.nfeat];
              S acc = 0.0;
              for (const Term& t : terms[o]) acc += (t.sign * fv[t.test_feature]) * y[t.trial_feature](i, n);
              dst(tp.dof[e], n) += acc;
              if (mirror) dst(n, tp.dof[e]) += acc;
            }
          }
        }
      }
      for (int n : touched) mark[n] = 0;
    };

    for (int p0 = p_begin; p0 < p_end; p0 += block) {
      const int b = std::min(block, p_end - p0);
      if (symmetric) {
        span(p0, b, p0, p0 + b, false);
        span(p0, b, p0 + b, np, true);
      } else {
        span(p0, b, 0, np, false);
      }
    }
  }

  void run(std::vector<Mat<S>>& out, int jobs) const {
    const TriangleMesh& mesh = *test.mesh();
    const Geometry geo = triangle_geometry(mesh);
    const auto near = near_lists(geo, quad.far_ratio);
    std::size_t near_count = 0;
    for (const auto& l : near) near_count += l.size();
    const bool has_far = near_count < static_cast<std::size_t>(mesh.num_triangles()) * mesh.num_triangles();

    PointTable tp, rp;
    if (has_far) {
      const TriangleRule& rule = gauss_triangle_rule(quad.far_order);
      if (form == Form::single_layer) {
        tp = make_points(test, rule, Features::single_layer);
        rp = &test == &trial ? tp : make_points(trial, rule, Features::single_layer);
      } else {
        tp = make_points(test, rule, Features::dl_test);
        rp = make_points(trial, rule, Features::dl_trial);
      }
    }

    jobs = std::max(1, jobs);
    const int nt = mesh.num_triangles();
    auto work = [&](int w, std::vector<Mat<S>>& dst) {
      near_field(near, nt * w / jobs, nt * (w + 1) / jobs, dst);
      if (has_far) {
        const int np = tp.size();
        far_field(tp, rp, near, np * w / jobs, np * (w + 1) / jobs, dst);
      }
    };
    if (jobs == 1) {
      work(0, out);
      return;
    }
    std::vector<std::vector<Mat<S>>> priv(jobs - 1);
    std::vector<std::thread> threads;
    for (int w = 1; w < jobs; ++w) {
      priv[w - 1].resize(out.size());
      for (std::size_t o = 0; o < out.size(); ++o) {
        if (out[o].size() != 0) priv[w - 1][o] = Mat<S>::Zero(out[o].rows(), out[o].cols());
      }
      threads.emplace_back(work, w, std::ref(priv[w - 1]));
    }
    work(0, out);
    for (auto& th : threads) th.join();
    for (const auto& p : priv) {
      for (std::size_t o = 0; o < out.size(); ++o) {
        if (out[o].size() != 0) out[o] += p[o];
      }
    }
  }
};

void check_same_mesh(const BasisSpace& test, const BasisSpace& trial) {
  if (test.mesh() != trial.mesh()) {
    throw std::invalid_argument("assembly: test and trial spaces must share one mesh");
  }
}

template <class Kn>
std::vector<Mat<typename Kn::Scalar>> run_kernel(const Kn& kern, Form form, bool want_a, bool want_v,
                                                 const BasisSpace& test, const BasisSpace& trial,
                                                 const AssemblyOptions& opt, double wave_scale) {
  using S = typename Kn::Scalar;
  check_same_mesh(test, trial);
  opt.quad.validate();
  const Geometry geo = triangle_geometry(*test.mesh());
  Engine<Kn> eng{kern, form, test, trial, opt.quad.adapted(wave_scale, geo.max_diameter), &test == &trial, {}};
  std::vector<Mat<S>> out;
  if (form == Form::single_layer) {
    eng.terms = {{{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}}, {{3, 3, 1.0}}};
    out.resize(2);
    if (want_a) out[0] = Mat<S>::Zero(test.dof_count(), trial.dof_count());
    if (want_v) out[1] = Mat<S>::Zero(test.dof_count(), trial.dof_count());
  } else {
    eng.terms = {{{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, -1.0}, {4, 4, -1.0}, {5, 5, -1.0}}};
    out.resize(1);
    out[0] = Mat<S>::Zero(test.dof_count(), trial.dof_count());
  }
  eng.run(out, opt.jobs);
  return out;
}

template <class M>
ComplexDenseMatrix to_complex(const M& m) {
  if constexpr (std::is_same_v<typename M::Scalar, double>) {
    return m.template cast<cplx>();
  } else {
    return m;
  }
}

std::vector<ComplexDenseMatrix> dispatch(const KernelSpec& k, Form form, bool want_a, bool want_v,
                                         const BasisSpace& test, const BasisSpace& trial, const AssemblyOptions& opt) {
  std::vector<ComplexDenseMatrix> res;
  auto collect = [&](auto&& mats) {
    for (auto& m : mats) res.push_back(m.size() == 0 ? ComplexDenseMatrix() : to_complex(m));
  };
  if (k.kind == KernelSpec::Kind::difference) {
    collect(run_kernel(DifferenceKernel{k.kappa, k.kappa_prime}, form, want_a, want_v, test, trial, opt,
                       k.wave_scale()));
  } else if (k.is_real()) {
    collect(run_kernel(YukawaKernel{k.sigma.imag()}, form, want_a, want_v, test, trial, opt, k.wave_scale()));
  } else {
    collect(run_kernel(HelmholtzKernel{k.sigma}, form, want_a, want_v, test, trial, opt, k.wave_scale()));
  }
  return res;
}

}  // namespace

KernelSpec KernelSpec::helmholtz(cplx sigma) {
  if (sigma == 0.0) throw std::invalid_argument("KernelSpec: sigma must be nonzero");
  KernelSpec k;
  k.kind = Kind::helmholtz;
  k.sigma = sigma;
  return k;
}

KernelSpec KernelSpec::difference(double kappa, double kappa_prime) {
  const Wavenumber check(kappa, kappa_prime);
  KernelSpec k;
  k.kind = Kind::difference;
  k.kappa = check.kappa;
  k.kappa_prime = check.kappa_prime;
  return k;
}

double KernelSpec::wave_scale() const {
  return kind == Kind::difference ? std::max(kappa, kappa_prime) : std::abs(sigma);
}

SingleLayerBlocks assemble_single_layer_blocks(const KernelSpec& kernel, const BasisSpace& test,
                                               const BasisSpace& trial, const AssemblyOptions& opt) {
  auto m = dispatch(kernel, Form::single_layer, true, true, test, trial, opt);
  return {std::move(m[0]), std::move(m[1])};
}

ComplexDenseMatrix assemble_double_layer(const KernelSpec& kernel, const BasisSpace& test, const BasisSpace& trial,
                                         const AssemblyOptions& opt) {
  return std::move(dispatch(kernel, Form::double_layer, false, false, test, trial, opt)[0]);
}

ComplexDenseMatrix assemble_vector_single_layer(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                                                const AssemblyOptions& opt) {
  return std::move(dispatch(KernelSpec::helmholtz(sigma), Form::single_layer, true, false, test, trial, opt)[0]);
}

ComplexDenseMatrix assemble_scalar_single_layer(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                                                const AssemblyOptions& opt) {
  return std::move(dispatch(KernelSpec::helmholtz(sigma), Form::single_layer, false, true, test, trial, opt)[1]);
}

ComplexDenseMatrix assemble_S(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                              const AssemblyOptions& opt) {
  SingleLayerBlocks b = assemble_single_layer_blocks(KernelSpec::helmholtz(sigma), test, trial, opt);
  b.a -= (1.0 / (sigma * sigma)) * b.v;
  return std::move(b.a);
}

ComplexDenseMatrix assemble_C(cplx sigma, const BasisSpace& test, const BasisSpace& trial,
                              const AssemblyOptions& opt) {
  return assemble_double_layer(KernelSpec::helmholtz(sigma), test, trial, opt);
}

ComplexDenseMatrix assemble_pairing(const BasisSpace& test, const BasisSpace& trial) {
  check_same_mesh(test, trial);
  const TriangleMesh& mesh = *test.mesh();
  ComplexDenseMatrix g = ComplexDenseMatrix::Zero(test.dof_count(), trial.dof_count());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.area(t);
    const Vec3& n = mesh.normal(t);
    const Vec3 xint = area * mesh.centroid(t);
    // (v x n) . u = n . (u x v), integrated exactly for affine u, v
    for (const LocalShape& v : test.shapes(t)) {
      for (const LocalShape& u : trial.shapes(t)) {
        const double val = area * n.dot(u.alpha.cross(v.alpha)) + v.beta * n.dot(u.alpha.cross(xint)) +
                           u.beta * n.dot(xint.cross(v.alpha));
        g(v.dof, u.dof) += val;
      }
    }
  }
  return g;
}

ComplexDenseMatrix assemble_twisted_pairing(const BasisSpace& space) { return assemble_pairing(space, space); }

ComplexDenseMatrix assemble_gram(const BasisSpace& bc, const BasisSpace& rt0, const RefinedMesh& refined) {
  if (bc.kind() != SpaceKind::bc || bc.mesh() != refined.fine) {
    throw std::invalid_argument("assemble_gram: test space must be BC on the refinement");
  }
  const SpacePtr fine_rt0 = restrict_rt0_to_refinement(rt0, refined);
  return assemble_pairing(bc, *fine_rt0);
}

ComplexDenseMatrix combine_M(const SingleLayerBlocks& yukawa, const Wavenumber& k, const CouplingParameter& eta) {
  const cplx ca(k.kappa_prime * k.kappa_prime, eta.eta);
  const cplx cv(1.0, -eta.eta / (k.kappa * k.kappa));
  return ca * yukawa.a + cv * yukawa.v;
}

ComplexDenseMatrix combine_Z(const SingleLayerBlocks& difference, const Wavenumber& k,
                             const CouplingParameter& eta) {
  return (I * eta.eta) * (difference.a - (1.0 / (k.kappa * k.kappa)) * difference.v);
}

ComplexDenseMatrix assemble_M(const Wavenumber& k, const CouplingParameter& eta, const BasisSpace& rt0,
                              const AssemblyOptions& opt) {
  return combine_M(assemble_single_layer_blocks(KernelSpec::yukawa(k.kappa_prime), rt0, rt0, opt), k, eta);
}

ComplexDenseMatrix assemble_Z(const Wavenumber& k, const CouplingParameter& eta, const BasisSpace& rt0,
                              const AssemblyOptions& opt) {
  return combine_Z(assemble_single_layer_blocks(KernelSpec::difference(k.kappa, k.kappa_prime), rt0, rt0, opt), k,
                   eta);
}

ComplexDenseMatrix assemble_K(double kappa_prime, const BasisSpace& bc, const AssemblyOptions& opt) {
  ComplexDenseMatrix k = assemble_double_layer(KernelSpec::yukawa(kappa_prime), bc, bc, opt);
  k += 0.5 * assemble_twisted_pairing(bc);
  return k;
}

ComplexDenseMatrix assemble_C_delta(const Wavenumber& k, const BasisSpace& rt0, const AssemblyOptions& opt) {
  return assemble_double_layer(KernelSpec::difference(k.kappa, k.kappa_prime), rt0, rt0, opt);
}

}  // namespace cfiebem
