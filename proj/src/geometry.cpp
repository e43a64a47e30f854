#include "anisofem/geometry.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace anisofem {

double signed_area(const TriangleGeom& t) {
  const Point2 u = t.p2 - t.p1;
  const Point2 v = t.p3 - t.p1;
  return 0.5 * (u.x() * v.y() - u.y() * v.x());
}

double diameter(const TriangleGeom& t) {
  return std::max({(t.p2 - t.p1).norm(), (t.p3 - t.p2).norm(), (t.p1 - t.p3).norm()});
}

bool is_degenerate(const TriangleGeom& t) {
  const double d = diameter(t);
  return std::abs(signed_area(t)) < 1e-14 * d * d;
}

double area(const TriangleGeom& t) {
  if (is_degenerate(t)) throw std::invalid_argument("area: degenerate triangle");
  return std::abs(signed_area(t));
}

double circumradius(const TriangleGeom& t) {
  const double a = (t.p3 - t.p2).norm();
  const double b = (t.p1 - t.p3).norm();
  const double c = (t.p2 - t.p1).norm();
  return a * b * c / (4.0 * area(t));
}

TriangleGeom oriented(const TriangleGeom& t) {
  if (signed_area(t) < 0.0) return {t.p1, t.p3, t.p2};
  return t;
}

Eigen::Matrix<double, 3, 2> barycentric_gradients(const TriangleGeom& t) {
  const double s2 = 2.0 * signed_area(t);
  if (is_degenerate(t)) throw std::invalid_argument("barycentric_gradients: degenerate triangle");
  auto perp = [](const Point2& v) { return Point2(-v.y(), v.x()); };
  Eigen::Matrix<double, 3, 2> g;
  g.row(0) = perp(t.p3 - t.p2) / s2;
  g.row(1) = perp(t.p1 - t.p3) / s2;
  g.row(2) = perp(t.p2 - t.p1) / s2;
  return g;
}

Point2 map_barycentric(const TriangleGeom& t, const Eigen::Vector3d& lambda) {
  return lambda[0] * t.p1 + lambda[1] * t.p2 + lambda[2] * t.p3;
}

namespace {

// One fully symmetric orbit of barycentric points. kind 1: centroid,
// kind 3: permutations of (1-2a, a, a), kind 6: permutations of (1-b-g, b, g).
struct Orbit {
  int kind;
  double a, b;
  double weight;
};

QuadRule build_rule(int degree, const std::vector<Orbit>& orbits) {
  int n = 0;
  for (const auto& o : orbits) n += o.kind;
  QuadRule r;
  r.degree = degree;
  r.points.resize(n, 3);
  r.weights.resize(n);
  int k = 0;
  auto push = [&](double l1, double l2, double l3, double w) {
    r.points.row(k) << l1, l2, l3;
    r.weights[k] = w;
    ++k;
  };
  for (const auto& o : orbits) {
    if (o.kind == 1) {
      push(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, o.weight);
    } else if (o.kind == 3) {
      const double c = 1.0 - 2.0 * o.a;
      push(c, o.a, o.a, o.weight);
      push(o.a, c, o.a, o.weight);
      push(o.a, o.a, c, o.weight);
    } else {
      const double c = 1.0 - o.a - o.b;
      const std::array<std::array<double, 3>, 6> perms = {{{c, o.a, o.b},
                                                           {c, o.b, o.a},
                                                           {o.a, c, o.b},
                                                           {o.a, o.b, c},
                                                           {o.b, c, o.a},
                                                           {o.b, o.a, c}}};
      for (const auto& p : perms) push(p[0], p[1], p[2], o.weight);
    }
  }
  return r;
}

// Orbit parameters solved from the symmetric moment equations at 40-digit
// precision, then rounded to double. Published 15-digit tables lose a couple
// of ulps, which matters for the degree 5-6 monomial residuals.
std::array<QuadRule, 6> build_all_rules() {
  std::array<QuadRule, 6> rules;
  rules[0] = build_rule(1, {{1, 0.0, 0.0, 1.0}});
  rules[1] = build_rule(2, {{3, 1.0 / 6.0, 0.0, 1.0 / 3.0}});
  const std::vector<Orbit> six_point = {
      {3, 0.44594849091596489, 0.0, 0.22338158967801147},
      {3, 0.091576213509770743, 0.0, 0.10995174365532187}};
  rules[2] = build_rule(3, six_point);
  rules[3] = build_rule(4, six_point);
  rules[4] = build_rule(5, {{1, 0.0, 0.0, 0.225},
                            {3, 0.10128650732345634, 0.0, 0.12593918054482715},
                            {3, 0.47014206410511509, 0.0, 0.13239415278850618}});
  rules[5] = build_rule(6, {{3, 0.063089014491502228, 0.0, 0.050844906370206817},
                            {3, 0.24928674517091042, 0.0, 0.11678627572637937},
                            {6, 0.31035245103378441, 0.053145049844816947, 0.082851075618373575}});
  return rules;
}

}  // namespace

const QuadRule& quad_rule(int degree) {
  static const std::array<QuadRule, 6> rules = build_all_rules();
  if (degree < 1 || degree > 6) throw std::invalid_argument("quad_rule: degree must be in 1..6");
  return rules[static_cast<std::size_t>(degree - 1)];
}

double integrate(const TriangleGeom& t, const QuadRule& rule, const ScalarField& g) {
  const double a = area(t);
  double s = 0.0;
  for (Eigen::Index i = 0; i < rule.weights.size(); ++i) {
    s += rule.weights[i] * g(map_barycentric(t, rule.points.row(i).transpose()));
  }
  return a * s;
}

}  // namespace anisofem
