#include "anisofem/analysis.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace anisofem {

Constants babuska_aziz() {
  // g(theta) = tan(theta) + theta is monotone increasing on (pi/2, pi),
  // from -inf to pi, so bisection is safe.
  double lo = std::numbers::pi / 2.0 + 1e-12;
  double hi = std::numbers::pi;
  for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tan(mid) + mid < 0.0 ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);
  Constants c;
  c.A2 = 1.0 / theta;
  c.C2_2 = 4.0 * std::sqrt(2.0) * c.A2;
  c.R_threshold = 1.0 / c.C2_2;
  return c;
}

namespace {

// 3-point Gauss-Legendre on [0,1], exact through degree 5.
constexpr double kGauss3Pos[3] = {0.5 - 0.5 * 0.7745966692414834, 0.5,
                                  0.5 + 0.5 * 0.7745966692414834};
constexpr double kGauss3W[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

}  // namespace

FeFunction rt_interpolate(const Mesh& m, const VectorFn& q) {
  FeFunction f;
  f.dofmap = std::make_shared<DofMap>(build_dofmap(m, SpaceKind::RT0));
  f.coeffs.resize(m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) {
    const Edge& ed = m.edges[static_cast<std::size_t>(e)];
    const Point2 a = m.vertices[static_cast<std::size_t>(ed.v0)];
    const Point2 b = m.vertices[static_cast<std::size_t>(ed.v1)];
    const Point2 n = m.edge_normal(e);
    double mean = 0.0;
    for (int g = 0; g < 3; ++g) mean += kGauss3W[g] * q(a + kGauss3Pos[g] * (b - a)).dot(n);
    f.coeffs[e] = mean;
  }
  return f;
}

FeFunction pi0_project(const Mesh& m, const ScalarField& g, int rule_degree) {
  const QuadRule& rule = quad_rule(rule_degree);
  FeFunction f;
  f.dofmap = std::make_shared<DofMap>(build_dofmap(m, SpaceKind::P0));
  f.coeffs.resize(m.triangle_count());
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom geo = m.triangle_geom(t);
    double s = 0.0;
    for (Eigen::Index qi = 0; qi < rule.weights.size(); ++qi)
      s += rule.weights[qi] * g(map_barycentric(geo, rule.points.row(qi).transpose()));
    f.coeffs[t] = s;
  }
  return f;
}

namespace {

// |q - q_h|_{0,K}^2 with q_h an RT0 function, by quadrature.
double l2_error_sq_on(const Mesh& m, const FeFunction& q_h, int t, const VectorFn& q,
                      const QuadRule& rule) {
  const TriangleGeom g = m.triangle_geom(t);
  double s = 0.0;
  for (Eigen::Index qi = 0; qi < rule.weights.size(); ++qi) {
    const Eigen::Vector3d lambda = rule.points.row(qi).transpose();
    s += rule.weights[qi] * (q(map_barycentric(g, lambda)) - eval_vector(q_h, t, lambda)).squaredNorm();
  }
  return area(g) * s;
}

// |q - q_h|_{1,K}^2; the RT0 Jacobian is (div/2) I.
double h1_error_sq_on(const Mesh& m, const FeFunction& q_h, int t, const VectorField& q,
                      const QuadRule& rule) {
  const TriangleGeom g = m.triangle_geom(t);
  const Eigen::Matrix2d jh = 0.5 * divergence(q_h, t) * Eigen::Matrix2d::Identity();
  double s = 0.0;
  for (Eigen::Index qi = 0; qi < rule.weights.size(); ++qi) {
    const Eigen::Vector3d lambda = rule.points.row(qi).transpose();
    s += rule.weights[qi] * (q.jacobian(map_barycentric(g, lambda)) - jh).squaredNorm();
  }
  return area(g) * s;
}

}  // namespace

SharpnessCase sharpness_case(double h) {
  if (h <= 0.0) throw std::invalid_argument("sharpness_case: h must be positive");
  const double c = (1.0 + h * h) / (2.0 * h);
  const VectorFn q = [c](const Point2& x) { return Point2(x.y() - c, x.x()); };
  const VectorField field{
      q, [](const Point2&) { return (Eigen::Matrix2d() << 0, 1, 1, 0).finished(); }, {}};

  Mesh m = make_mesh({Point2(1.0, 0.0), Point2(-1.0, 0.0), Point2(0.0, h)}, {{0, 1, 2}});
  const FeFunction iq = rt_interpolate(m, q);

  SharpnessCase out;
  out.iq_max_abs_dof = iq.coeffs.cwiseAbs().maxCoeff();
  out.e0_sq = l2_error_sq_on(m, iq, 0, q, quad_rule(2));
  out.e1_sq = h1_error_sq_on(m, iq, 0, field, quad_rule(2));
  out.ratio = std::sqrt(out.e0_sq / out.e1_sq);
  out.circumradius = circumradius(m.triangle_geom(0));
  return out;
}

InterpBoundRatios interp_bound_check(const Mesh& m, const VectorField& q) {
  if (!q.value || !q.jacobian || !q.div_gradient)
    throw std::invalid_argument("interp_bound_check: field needs value, jacobian and div_gradient");
  const FeFunction iq = rt_interpolate(m, q.value);
  const QuadRule& err_rule = quad_rule(6);
  const QuadRule& der_rule = quad_rule(4);

  InterpBoundRatios worst;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    const double a = area(g);

    double q_h1_sq = 0.0, divq_h1_sq = 0.0;
    for (Eigen::Index qi = 0; qi < der_rule.weights.size(); ++qi) {
      const Point2 x = map_barycentric(g, der_rule.points.row(qi).transpose());
      q_h1_sq += der_rule.weights[qi] * q.jacobian(x).squaredNorm();
      divq_h1_sq += der_rule.weights[qi] * q.div_gradient(x).squaredNorm();
    }
    q_h1_sq *= a;
    divq_h1_sq *= a;

    if (q_h1_sq > 0.0) {
      const double num = std::sqrt(l2_error_sq_on(m, iq, t, q.value, err_rule));
      const double den = circumradius(g) * std::sqrt(q_h1_sq);
      worst.l2_over_R = std::max(worst.l2_over_R, num / den);
    }

    if (divq_h1_sq > 0.0) {
      const double div_h = divergence(iq, t);
      double num_sq = 0.0;
      for (Eigen::Index qi = 0; qi < err_rule.weights.size(); ++qi) {
        const Point2 x = map_barycentric(g, err_rule.points.row(qi).transpose());
        const Eigen::Matrix2d j = q.jacobian(x);
        const double dv = j(0, 0) + j(1, 1);
        num_sq += err_rule.weights[qi] * (dv - div_h) * (dv - div_h);
      }
      num_sq *= a;
      const double den = diameter(g) * std::sqrt(divq_h1_sq);
      worst.div_over_h = std::max(worst.div_over_h, std::sqrt(num_sq) / den);
    }
  }
  return worst;
}

ErrorReport error_norms(const Mesh& m, const FeFunction& u_h, const ScalarField& exact_u,
                        const VectorFn& exact_grad, int rule_degree) {
  if (!u_h.dofmap || u_h.dofmap->kind == SpaceKind::RT0)
    throw std::invalid_argument("error_norms: expects a scalar FE function");
  const bool has_gradient = u_h.dofmap->kind != SpaceKind::P0;
  const QuadRule& rule = quad_rule(rule_degree);

  ErrorReport rep;
  rep.per_element_l2_sq = Eigen::VectorXd::Zero(m.triangle_count());
  rep.per_element_h1_sq = Eigen::VectorXd::Zero(m.triangle_count());
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    const double a = area(g);
    double l2 = 0.0;
    for (Eigen::Index qi = 0; qi < rule.weights.size(); ++qi) {
      const Eigen::Vector3d lambda = rule.points.row(qi).transpose();
      const double diff = exact_u(map_barycentric(g, lambda)) - eval_scalar(u_h, t, lambda);
      l2 += rule.weights[qi] * diff * diff;
    }
    rep.per_element_l2_sq[t] = a * l2;

    if (has_gradient && exact_grad) {
      const Point2 gh = gradient(u_h, t);
      double h1 = 0.0;
      for (Eigen::Index qi = 0; qi < rule.weights.size(); ++qi) {
        const Point2 x = map_barycentric(g, rule.points.row(qi).transpose());
        h1 += rule.weights[qi] * (exact_grad(x) - gh).squaredNorm();
      }
      rep.per_element_h1_sq[t] = a * h1;
    }
  }
  rep.l2 = std::sqrt(rep.per_element_l2_sq.sum());
  rep.h1_broken = std::sqrt(rep.per_element_h1_sq.sum());
  return rep;
}

ErrorReport flux_error_norms(const Mesh& m, const FeFunction& p_h, const VectorFn& exact_q,
                             int rule_degree) {
  if (!p_h.dofmap || p_h.dofmap->kind != SpaceKind::RT0)
    throw std::invalid_argument("flux_error_norms: expects an RT0 function");
  const QuadRule& rule = quad_rule(rule_degree);
  ErrorReport rep;
  rep.per_element_l2_sq = Eigen::VectorXd::Zero(m.triangle_count());
  rep.per_element_h1_sq = Eigen::VectorXd::Zero(m.triangle_count());
  for (int t = 0; t < m.triangle_count(); ++t)
    rep.per_element_l2_sq[t] = l2_error_sq_on(m, p_h, t, exact_q, rule);
  rep.l2 = std::sqrt(rep.per_element_l2_sq.sum());
  return rep;
}

double max_normal_jump(const Mesh& m, const FeFunction& rt) {
  if (!rt.dofmap || rt.dofmap->kind != SpaceKind::RT0)
    throw std::invalid_argument("max_normal_jump: expects an RT0 function");
  double worst = 0.0;
  for (int e = 0; e < m.edge_count(); ++e) {
    const Edge& ed = m.edges[static_cast<std::size_t>(e)];
    if (ed.tri_count != 2) continue;
    const Point2 n = m.edge_normal(e);
    double side[2];
    for (int s = 0; s < 2; ++s) {
      const int t = ed.tris[static_cast<std::size_t>(s)];
      Eigen::Vector3d lambda(0.5, 0.5, 0.5);
      for (int i = 0; i < 3; ++i) {
        if (m.tri_edges[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] == e) lambda[i] = 0.0;
      }
      side[s] = eval_vector(rt, t, lambda).dot(n);
    }
    worst = std::max(worst, std::abs(side[0] - side[1]));
  }
  return worst;
}

double mixed_residual(const Mesh& m, const ScalarField& f, const RtSolution& sol,
                      int rule_degree) {
  const MixedSystem sys = assemble_mixed(m, f, rule_degree);
  const Eigen::VectorXd mp = sys.mass * sol.flux.coeffs;
  const Eigen::VectorXd btu = sys.div_op.transpose() * sol.scalar.coeffs;
  const double scale1 = std::max(mp.norm(), btu.norm());
  const double r1 = (mp + btu - sys.rhs_flux).norm() / (scale1 > 0.0 ? scale1 : 1.0);
  const Eigen::VectorXd bp = sys.div_op * sol.flux.coeffs;
  const double fn = sys.rhs_scalar.norm();
  const double r2 = (bp + sys.rhs_scalar).norm() / (fn > 0.0 ? fn : 1.0);
  return std::max(r1, r2);
}

const std::vector<std::pair<std::string, VectorField>>& standard_vector_fields() {
  static const std::vector<std::pair<std::string, VectorField>> fields = [] {
    std::vector<std::pair<std::string, VectorField>> v;
    v.push_back({"(sin x cos y, x^2 y)",
                 {[](const Point2& p) { return Point2(std::sin(p.x()) * std::cos(p.y()), p.x() * p.x() * p.y()); },
                  [](const Point2& p) {
                    return (Eigen::Matrix2d() << std::cos(p.x()) * std::cos(p.y()),
                            -std::sin(p.x()) * std::sin(p.y()), 2.0 * p.x() * p.y(), p.x() * p.x())
                        .finished();
                  },
                  [](const Point2& p) {
                    return Point2(-std::sin(p.x()) * std::cos(p.y()) + 2.0 * p.x(),
                                  -std::cos(p.x()) * std::sin(p.y()));
                  }}});
    v.push_back({"(e^x cos y, e^y sin x)",
                 {[](const Point2& p) { return Point2(std::exp(p.x()) * std::cos(p.y()), std::exp(p.y()) * std::sin(p.x())); },
                  [](const Point2& p) {
                    return (Eigen::Matrix2d() << std::exp(p.x()) * std::cos(p.y()),
                            -std::exp(p.x()) * std::sin(p.y()), std::exp(p.y()) * std::cos(p.x()),
                            std::exp(p.y()) * std::sin(p.x()))
                        .finished();
                  },
                  [](const Point2& p) {
                    return Point2(std::exp(p.x()) * std::cos(p.y()) + std::exp(p.y()) * std::cos(p.x()),
                                  -std::exp(p.x()) * std::sin(p.y()) + std::exp(p.y()) * std::sin(p.x()));
                  }}});
    v.push_back({"(x^3 - 3xy^2, x^2 y)",
                 {[](const Point2& p) {
                    return Point2(p.x() * p.x() * p.x() - 3.0 * p.x() * p.y() * p.y(), p.x() * p.x() * p.y());
                  },
                  [](const Point2& p) {
                    return (Eigen::Matrix2d() << 3.0 * p.x() * p.x() - 3.0 * p.y() * p.y(),
                            -6.0 * p.x() * p.y(), 2.0 * p.x() * p.y(), p.x() * p.x())
                        .finished();
                  },
                  [](const Point2& p) { return Point2(8.0 * p.x(), -6.0 * p.y()); }}});
    v.push_back({"(cos px sin py, sin px cos py)",
                 {[](const Point2& p) {
                    return Point2(std::cos(std::numbers::pi * p.x()) * std::sin(std::numbers::pi * p.y()),
                                  std::sin(std::numbers::pi * p.x()) * std::cos(std::numbers::pi * p.y()));
                  },
                  [](const Point2& p) {
                    const double pi = std::numbers::pi;
                    return (Eigen::Matrix2d() << -pi * std::sin(pi * p.x()) * std::sin(pi * p.y()),
                            pi * std::cos(pi * p.x()) * std::cos(pi * p.y()),
                            pi * std::cos(pi * p.x()) * std::cos(pi * p.y()),
                            -pi * std::sin(pi * p.x()) * std::sin(pi * p.y()))
                        .finished();
                  },
                  [](const Point2& p) {
                    const double pi = std::numbers::pi;
                    return Point2(-2.0 * pi * pi * std::cos(pi * p.x()) * std::sin(pi * p.y()),
                                  -2.0 * pi * pi * std::sin(pi * p.x()) * std::cos(pi * p.y()));
                  }}});
    v.push_back({"(x^2 + y^2, xy)",
                 {[](const Point2& p) { return Point2(p.x() * p.x() + p.y() * p.y(), p.x() * p.y()); },
                  [](const Point2& p) {
                    return (Eigen::Matrix2d() << 2.0 * p.x(), 2.0 * p.y(), p.y(), p.x()).finished();
                  },
                  [](const Point2&) { return Point2(3.0, 0.0); }}});
    return v;
  }();
  return fields;
}

double pw_projection_check(const Mesh& m, const ScalarField& g, const VectorFn& grad_g,
                           int rule_degree) {
  const FeFunction mean = pi0_project(m, g, rule_degree);
  const QuadRule& rule = quad_rule(rule_degree);
  const QuadRule& der_rule = quad_rule(4);
  double worst = 0.0;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom geo = m.triangle_geom(t);
    const double a = area(geo);
    double den_sq = 0.0;
    for (Eigen::Index qi = 0; qi < der_rule.weights.size(); ++qi)
      den_sq += der_rule.weights[qi] *
                grad_g(map_barycentric(geo, der_rule.points.row(qi).transpose())).squaredNorm();
    den_sq *= a;
    if (den_sq <= 0.0) continue;

    double num_sq = 0.0;
    for (Eigen::Index qi = 0; qi < rule.weights.size(); ++qi) {
      const double diff = g(map_barycentric(geo, rule.points.row(qi).transpose())) - mean.coeffs[t];
      num_sq += rule.weights[qi] * diff * diff;
    }
    num_sq *= a;
    worst = std::max(worst, std::sqrt(num_sq) / (diameter(geo) * std::sqrt(den_sq)));
  }
  return worst;
}

}  // namespace anisofem
