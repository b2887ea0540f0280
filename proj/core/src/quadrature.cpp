#include "cfiebem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace cfiebem {
namespace {

void add_orbit3(TriangleRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.emplace_back(b, a, a);
  r.points.emplace_back(a, b, a);
  r.points.emplace_back(a, a, b);
  for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

// Collapsed (Duffy) Gauss product rule, exact to degree 2m - 2.
TriangleRule collapsed_rule(int m) {
  const LineRule g = gauss_legendre_01(m);
  TriangleRule r;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double u = g.nodes[i];
      const double v = g.nodes[j];
      const double s = u;
      const double t = v * (1.0 - u);
      r.points.emplace_back(1.0 - s - t, s, t);
      r.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - u));
    }
  }
  return r;
}

TriangleRule make_triangle_rule(int order) {
  TriangleRule r;
  switch (order) {
    case 1:
      r.points.emplace_back(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
      r.weights.push_back(1.0);
      break;
    case 2:
      add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      // no positive symmetric degree-3 rule beats the 6-point degree-4 one
      add_orbit3(r, 0.445948490915965, 0.223381589678011);
      add_orbit3(r, 0.091576213509771, 0.109951743655322);
      break;
    case 5:
      r.points.emplace_back(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
      r.weights.push_back(0.225);
      add_orbit3(r, 0.470142064105115, 0.132394152788506);
      add_orbit3(r, 0.101286507323456, 0.125939180544827);
      break;
    default:
      r = collapsed_rule((order + 3) / 2);
      break;
  }
  double sum = 0.0;
  for (double w : r.weights) sum += w;
  for (double& w : r.weights) w *= 0.5 / sum;
  r.degree = order;
  return r;
}

// Sauter-Schwab rules on {0 <= x2 <= x1 <= 1}, folded to the unit triangle by
// (x1, x2) -> (x1 - x2, x2). Shared vertices sit at the reference origin and
// along the first reference edge.
PairRule make_singular_rule(PairCase kind, int order) {
  const LineRule g = gauss_legendre_01(order);
  PairRule rule{kind, {}};
  auto push = [&](double a0, double a1, double b0, double b1, double w) {
    const double s1 = a0 - a1, t1 = a1;
    const double s2 = b0 - b1, t2 = b1;
    rule.nodes.push_back(PairNode{Vec3(1.0 - s1 - t1, s1, t1), Vec3(1.0 - s2 - t2, s2, t2), w});
  };
  for (int ix = 0; ix < order; ++ix) {
    const double xi = g.nodes[ix];
    for (int i3 = 0; i3 < order; ++i3) {
      const double e3 = g.nodes[i3];
      for (int i2 = 0; i2 < order; ++i2) {
        const double e2 = g.nodes[i2];
        for (int i1 = 0; i1 < order; ++i1) {
          const double e1 = g.nodes[i1];
          const double w0 = g.weights[ix] * g.weights[i3] * g.weights[i2] * g.weights[i1];
          switch (kind) {
            case PairCase::identical: {
              const double w = w0 * xi * xi * xi * e1 * e1 * e2;
              push(xi, xi * (1 - e1 + e1 * e2), xi * (1 - e1 * e2 * e3), xi * (1 - e1), w);
              push(xi * (1 - e1 * e2 * e3), xi * (1 - e1), xi, xi * (1 - e1 + e1 * e2), w);
              push(xi, xi * e1 * (1 - e2 + e2 * e3), xi * (1 - e1 * e2), xi * e1 * (1 - e2), w);
              push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * (1 - e2 + e2 * e3), w);
              push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * (1 - e2), w);
              push(xi, xi * e1 * (1 - e2), xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), w);
              break;
            }
            case PairCase::common_edge: {
              const double w = w0 * xi * xi * xi * e1 * e1 * e2;
              push(xi, xi * e1 * e3, xi * (1 - e1 * e2), xi * e1 * (1 - e2), w0 * xi * xi * xi * e1 * e1);
              push(xi, xi * e1, xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), w);
              push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * e2 * e3, w);
              push(xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), xi, xi * e1, w);
              push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * e2, w);
              break;
            }
            case PairCase::common_vertex: {
              const double w = w0 * xi * xi * xi * e2;
              push(xi, xi * e1, xi * e2, xi * e2 * e3, w);
              push(xi * e2, xi * e2 * e3, xi, xi * e1, w);
              break;
            }
            case PairCase::disjoint:
              throw std::logic_error("make_singular_rule: disjoint case");
          }
        }
      }
    }
  }
  return rule;
}

PairRule make_tensor_rule(int order) {
  const TriangleRule& t = gauss_triangle_rule(order);
  PairRule rule{PairCase::disjoint, {}};
  rule.nodes.reserve(t.weights.size() * t.weights.size());
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    for (std::size_t j = 0; j < t.weights.size(); ++j) {
      rule.nodes.push_back(PairNode{t.points[i], t.points[j], t.weights[i] * t.weights[j]});
    }
  }
  return rule;
}

std::array<int, 3> rotate_to_front(int first) { return {first, (first + 1) % 3, (first + 2) % 3}; }

std::array<int, 3> edge_to_front(int a, int b) { return {a, b, 3 - a - b}; }

PairClassification classify_from_matches(const std::array<int, 3>& match) {
  // match[i] = local index in t2 of t1's vertex i, or -1
  PairClassification pc;
  int shared = 0;
  std::array<int, 3> in1{};
  for (int i = 0; i < 3; ++i) {
    if (match[i] >= 0) in1[shared++] = i;
  }
  switch (shared) {
    case 3: {
      pc.kind = PairCase::identical;
      pc.perm1 = {0, 1, 2};
      pc.perm2 = {match[0], match[1], match[2]};
      break;
    }
    case 2:
      pc.kind = PairCase::common_edge;
      pc.perm1 = edge_to_front(in1[0], in1[1]);
      pc.perm2 = edge_to_front(match[in1[0]], match[in1[1]]);
      break;
    case 1:
      pc.kind = PairCase::common_vertex;
      pc.perm1 = rotate_to_front(in1[0]);
      pc.perm2 = rotate_to_front(match[in1[0]]);
      break;
    default:
      pc.kind = PairCase::disjoint;
      break;
  }
  return pc;
}

}  // namespace

LineRule gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::make_pair(p1, n * (x * p1 - p0) / (x * x - 1.0));
  };
  LineRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = 0.5 * (1.0 - x);
    r.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    r.weights[i] = r.weights[n - 1 - i] = 0.5 * w;
  }
  return r;
}

const TriangleRule& gauss_triangle_rule(int order) {
  if (order < 1 || order > 10) {
    throw std::invalid_argument("gauss_triangle_rule: unsupported order " + std::to_string(order));
  }
  static const std::array<TriangleRule, 10> rules = [] {
    std::array<TriangleRule, 10> out;
    for (int k = 1; k <= 10; ++k) out[k - 1] = make_triangle_rule(k);
    return out;
  }();
  return rules[order - 1];
}

const char* to_string(PairCase c) {
  switch (c) {
    case PairCase::identical: return "identical";
    case PairCase::common_edge: return "common_edge";
    case PairCase::common_vertex: return "common_vertex";
    case PairCase::disjoint: return "disjoint";
  }
  return "unknown";
}

const PairRule& pair_rule(PairCase kind, int order) {
  if (order < 1 || order > 10) {
    throw std::invalid_argument("pair_rule: unsupported order " + std::to_string(order));
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, PairRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(static_cast<int>(kind), order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    PairRule rule = kind == PairCase::disjoint ? make_tensor_rule(order) : make_singular_rule(kind, order);
    it = cache.emplace(key, std::move(rule)).first;
  }
  return it->second;
}

PairClassification classify_pair(const Triangle& t1, const Triangle& t2) {
  std::array<int, 3> match{-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (t1[i] == t2[j]) match[i] = j;
    }
  }
  return classify_from_matches(match);
}

PairClassification classify_pair(const std::array<Vec3, 3>& t1, const std::array<Vec3, 3>& t2, double tol) {
  double diam = 0.0;
  for (const auto* t : {&t1, &t2}) {
    for (int i = 0; i < 3; ++i) diam = std::max(diam, ((*t)[i] - (*t)[(i + 1) % 3]).norm());
  }
  const double eps = tol * diam;
  std::array<int, 3> match{-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if ((t1[i] - t2[j]).norm() <= eps) {
        if (match[i] != -1) throw std::invalid_argument("classify_pair: degenerate triangle");
        match[i] = j;
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      if (match[i] >= 0 && match[i] == match[k]) {
        throw std::invalid_argument("classify_pair: inconsistent vertex matching");
      }
    }
  }
  return classify_from_matches(match);
}

cplx integrate_pair(const PairKernel& kernel, const std::array<Vec3, 3>& t1, const std::array<Vec3, 3>& t2,
                    const PairClassification& pc, int order) {
  const PairRule& rule = pair_rule(pc.kind, order);
  std::array<Vec3, 3> p1, p2;
  for (int k = 0; k < 3; ++k) {
    p1[k] = t1[pc.perm1[k]];
    p2[k] = t2[pc.perm2[k]];
  }
  const double jac = (t1[1] - t1[0]).cross(t1[2] - t1[0]).norm() * (t2[1] - t2[0]).cross(t2[2] - t2[0]).norm();
  cplx sum = 0.0;
  for (const PairNode& nd : rule.nodes) {
    const Vec3 x = nd.bary1[0] * p1[0] + nd.bary1[1] * p1[1] + nd.bary1[2] * p1[2];
    const Vec3 y = nd.bary2[0] * p2[0] + nd.bary2[1] * p2[1] + nd.bary2[2] * p2[2];
    const cplx v = kernel(x, y);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::runtime_error("integrate_pair: non-finite kernel value");
    }
    sum += nd.weight * v;
  }
  return sum * jac;
}

void QuadratureOptions::validate() const {
  if (singular_order < 1 || singular_order > 10 || regular_order < 1 || regular_order > 10 || far_order < 1 ||
      far_order > 10) {
    throw std::invalid_argument("QuadratureOptions: orders must lie in 1..10");
  }
  // smaller ratios could classify touching pairs as far
  if (!(far_ratio >= 2.0)) throw std::invalid_argument("QuadratureOptions: far_ratio must be >= 2");
}

QuadratureOptions QuadratureOptions::adapted(double wave_scale, double diameter) const {
  QuadratureOptions q = *this;
  if (oscillation_upgrade && wave_scale * diameter > 2.0) {
    q.singular_order = std::max(q.singular_order, 5);
    q.regular_order = std::max(q.regular_order, 4);
  }
  return q;
}

}  // namespace cfiebem
