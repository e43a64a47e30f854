#include "anisofem/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace anisofem;

TEST_CASE("interpolation constants") {
  const Constants c = babuska_aziz();
  CHECK(c.A2 == doctest::Approx(0.49291245175490757).epsilon(1e-12));
  CHECK(c.C2_2 == doctest::Approx(2.7883338973374567).epsilon(1e-12));
  CHECK(c.R_threshold == doctest::Approx(0.35863710617831200).epsilon(1e-12));
  CHECK(c.C2_2 == doctest::Approx(4.0 * std::sqrt(2.0) * c.A2).epsilon(1e-14));
  CHECK(c.R_threshold == doctest::Approx(1.0 / c.C2_2).epsilon(1e-14));
  // 1/A2 is a root of tan(t) + t in (pi/2, pi)
  const double theta = 1.0 / c.A2;
  CHECK(theta > M_PI_2);
  CHECK(theta < M_PI);
  CHECK(std::abs(std::tan(theta) + theta) < 1e-10);
}

TEST_CASE("rt_interpolate reproduces RT0 fields") {
  const Mesh m = generate_aniso(3, 6);
  // q = a + b x with a = (0.3, -0.7), b = 1.5 lies in RT0
  const Point2 a(0.3, -0.7);
  const double b = 1.5;
  const FeFunction q = rt_interpolate(m, [&](const Point2& p) { return Point2(a + b * p); });
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    const double expect = (a + b * m.edge_midpoint(e)).dot(m.edge_normal(e));
    CHECK(q.coeffs[e] == doctest::Approx(expect).epsilon(1e-13));
  }
  const Eigen::Vector3d mid(1.0 / 3, 1.0 / 3, 1.0 / 3);
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const Point2 p = map_barycentric(m.triangle_geom(t), mid);
    CHECK((eval_vector(q, t, mid) - (a + b * p)).norm() < 1e-12);
    CHECK(divergence(q, t) == doctest::Approx(2.0 * b).epsilon(1e-12));
  }
}

TEST_CASE("pi0_project computes element means") {
  const Mesh m = generate_aniso(2, 4);
  const FeFunction c = pi0_project(m, [](const Point2&) { return 4.25; });
  CHECK((c.coeffs.array() - 4.25).abs().maxCoeff() < 1e-14);

  const FeFunction px = pi0_project(m, [](const Point2& p) { return p.x(); });
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    const double centroid_x = (g.p1.x() + g.p2.x() + g.p3.x()) / 3.0;
    CHECK(px.coeffs[t] == doctest::Approx(centroid_x).epsilon(1e-13));
  }

  // mean-value property: g - pi0 g integrates to zero elementwise
  auto g = [](const Point2& p) { return std::sin(3.0 * p.x()) * std::cos(2.0 * p.y()); };
  const FeFunction pg = pi0_project(m, g);
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const TriangleGeom geo = m.triangle_geom(t);
    const double r = integrate(geo, quad_rule(6),
                               [&](const Point2& p) { return g(p) - pg.coeffs[t]; });
    CHECK(std::abs(r) < 1e-13 * area(geo));
  }
}

TEST_CASE("sharpness family against the closed forms") {
  // e0^2 = (3 + h^2)(1 + h^2) / (12 h), e1^2 = 2h, R = (1 + h^2) / (2h)
  for (const double h : {0.05, 0.1, 0.5, 1.0}) {
    CAPTURE(h);
    const SharpnessCase s = sharpness_case(h);
    const double e0 = (3.0 + h * h) * (1.0 + h * h) / (12.0 * h);
    CHECK(s.e0_sq == doctest::Approx(e0).epsilon(1e-10));
    CHECK(s.e1_sq == doctest::Approx(2.0 * h).epsilon(1e-10));
    CHECK(s.circumradius == doctest::Approx((1.0 + h * h) / (2.0 * h)).epsilon(1e-12));
    CHECK(s.ratio == doctest::Approx(std::sqrt(e0 / (2.0 * h))).epsilon(1e-10));
    CHECK(s.iq_max_abs_dof < 1e-13);
    // the ratio dominates R / (2 sqrt 6): no uniform bound in h can exist
    CHECK(s.ratio >= s.circumradius / (2.0 * std::sqrt(6.0)) * (1.0 - 1e-12));
  }
  const SharpnessCase unit = sharpness_case(1.0);
  CHECK(unit.e0_sq == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(unit.e1_sq == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(unit.ratio == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK(unit.circumradius == doctest::Approx(1.0).epsilon(1e-14));
  const SharpnessCase thin = sharpness_case(0.1);
  CHECK(thin.e0_sq == doctest::Approx(2.5334166666666666).epsilon(1e-12));
  CHECK(thin.e1_sq == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(thin.circumradius == doctest::Approx(5.05).epsilon(1e-14));
  CHECK_THROWS_AS(sharpness_case(0.0), std::invalid_argument);
}

TEST_CASE("interpolation error bounds hold on an anisotropic mesh") {
  const Mesh m = generate_aniso(4, 16);
  const Constants c = babuska_aziz();
  for (const auto& [name, field] : standard_vector_fields()) {
    CAPTURE(name);
    const InterpBoundRatios r = interp_bound_check(m, field);
    CHECK(r.l2_over_R > 0.0);
    CHECK(r.l2_over_R <= c.C2_2);
    CHECK(r.div_over_h > 0.0);
    CHECK(r.div_over_h <= 1.0);
  }
}

TEST_CASE("interpolating an RT0 field leaves no error") {
  const Mesh m = generate_aniso(3, 6);
  VectorField q;
  q.value = [](const Point2& p) { return Point2(2.0 * p.x() + 1.0, 2.0 * p.y() - 3.0); };
  q.jacobian = [](const Point2&) { return Eigen::Matrix2d(2.0 * Eigen::Matrix2d::Identity()); };
  q.div_gradient = [](const Point2&) { return Point2(0.0, 0.0); };
  const InterpBoundRatios r = interp_bound_check(m, q);
  CHECK(r.l2_over_R < 1e-10);
  CHECK(r.div_over_h == 0.0);  // div is constant, denominators all vanish

  VectorField incomplete;
  incomplete.value = q.value;
  CHECK_THROWS_AS(interp_bound_check(m, incomplete), std::invalid_argument);
}

TEST_CASE("error norms of the zero function are the norms of u") {
  const Mesh m = generate_aniso(4, 8);
  const PoissonProblem p = make_bubble_problem();
  auto dm = std::make_shared<const DofMap>(build_dofmap(m, SpaceKind::P1));
  const FeFunction zero{dm, Eigen::VectorXd::Zero(dm->dof_count)};
  const ErrorReport e = error_norms(m, zero, p.exact_u, p.exact_grad);
  CHECK(e.l2 == doctest::Approx(1.0 / 30.0).epsilon(1e-10));
  CHECK(e.h1_broken == doctest::Approx(0.14907119849998599).epsilon(1e-10));
  CHECK(e.per_element_l2_sq.sum() == doctest::Approx(e.l2 * e.l2).epsilon(1e-13));
  CHECK(e.per_element_h1_sq.sum() == doctest::Approx(e.h1_broken * e.h1_broken).epsilon(1e-13));
  CHECK(e.per_element_l2_sq.minCoeff() >= 0.0);
}

TEST_CASE("error norms vanish for an exactly representable solution") {
  const Mesh m = generate_aniso(3, 4);
  auto u = [](const Point2& p) { return 1.0 + 2.0 * p.x() - 0.5 * p.y(); };
  auto grad = [](const Point2&) { return Point2(2.0, -0.5); };
  for (const SpaceKind k : {SpaceKind::P1, SpaceKind::CR}) {
    auto dm = std::make_shared<const DofMap>(build_dofmap(m, k));
    FeFunction f{dm, Eigen::VectorXd::Zero(dm->dof_count)};
    if (k == SpaceKind::P1) {
      for (size_t v = 0; v < m.vertices.size(); ++v) f.coeffs[v] = u(m.vertices[v]);
    } else {
      for (int e = 0; e < static_cast<int>(m.edges.size()); ++e)
        f.coeffs[e] = u(m.edge_midpoint(e));
    }
    const ErrorReport e = error_norms(m, f, u, grad);
    CHECK(e.l2 < 1e-13);
    CHECK(e.h1_broken < 1e-12);
  }
}

TEST_CASE("flux error of the zero RT0 field is the gradient norm") {
  const Mesh m = generate_aniso(4, 8);
  const PoissonProblem p = make_bubble_problem();
  auto dm = std::make_shared<const DofMap>(build_dofmap(m, SpaceKind::RT0));
  const FeFunction zero{dm, Eigen::VectorXd::Zero(dm->dof_count)};
  const ErrorReport e = flux_error_norms(m, zero, p.exact_grad);
  CHECK(e.l2 == doctest::Approx(0.14907119849998599).epsilon(1e-10));
}

TEST_CASE("RT0 fields have no normal jumps") {
  const Mesh m = generate_aniso(3, 6);
  auto dm = std::make_shared<const DofMap>(build_dofmap(m, SpaceKind::RT0));
  FeFunction f{dm, Eigen::VectorXd::Zero(dm->dof_count)};
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = u(rng);
  CHECK(max_normal_jump(m, f) < 1e-12);
}

TEST_CASE("projection bound ratio behaves like a first-order estimate") {
  auto g = [](const Point2& p) { return std::sin(2.0 * p.x()) * std::sin(2.0 * p.y()); };
  auto grad = [](const Point2& p) {
    return Point2(2.0 * std::cos(2.0 * p.x()) * std::sin(2.0 * p.y()),
                  2.0 * std::sin(2.0 * p.x()) * std::cos(2.0 * p.y()));
  };
  const Mesh coarse = generate_aniso(4, 8);
  const double r1 = pw_projection_check(coarse, g, grad);
  CHECK(r1 > 0.0);
  CHECK(r1 <= 1.0);
  // the ratio is h-stable: refining does not inflate it beyond a factor 2
  const double r2 = pw_projection_check(generate_aniso(4, 64), g, grad);
  const double r3 = pw_projection_check(generate_aniso(8, 256), g, grad);
  CHECK(r2 <= 2.0 * r1);
  CHECK(r3 <= 2.0 * r1);

  // an affine function keeps a strictly positive but bounded ratio, while a
  // constant has no error (every element is skipped for lack of a slope)
  const double affine = pw_projection_check(
      coarse, [](const Point2& p) { return 3.0 * p.x() - p.y(); },
      [](const Point2&) { return Point2(3.0, -1.0); });
  CHECK(affine > 0.0);
  CHECK(affine <= 1.0);
  const double flat = pw_projection_check(
      coarse, [](const Point2&) { return 7.0; }, [](const Point2&) { return Point2(0.0, 0.0); });
  CHECK(flat == 0.0);
}

TEST_CASE("analysis routines guard the space kind") {
  const Mesh m = generate_aniso(1, 2);
  auto rt = std::make_shared<const DofMap>(build_dofmap(m, SpaceKind::RT0));
  auto p1 = std::make_shared<const DofMap>(build_dofmap(m, SpaceKind::P1));
  const FeFunction frt{rt, Eigen::VectorXd::Zero(rt->dof_count)};
  const FeFunction fp1{p1, Eigen::VectorXd::Zero(p1->dof_count)};
  auto zero = [](const Point2&) { return 0.0; };
  auto zerov = [](const Point2&) { return Point2(0.0, 0.0); };
  CHECK_THROWS_AS(error_norms(m, frt, zero, zerov), std::invalid_argument);
  CHECK_THROWS_AS(flux_error_norms(m, fp1, zerov), std::invalid_argument);
  CHECK_THROWS_AS(max_normal_jump(m, fp1), std::invalid_argument);
}

TEST_CASE("divergence of the interpolant is the mean of the divergence") {
  // exact for the polynomial test fields, where quadrature is exact
  const Mesh m = generate_aniso(4, 16);
  const auto& fields = standard_vector_fields();
  for (const size_t idx : {size_t{2}, size_t{4}}) {
    const VectorField& q = fields[idx].second;
    const FeFunction iq = rt_interpolate(m, q.value);
    const FeFunction divq = pi0_project(m, [&](const Point2& p) {
      return q.jacobian(p).trace();
    });
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t)
      CHECK(divergence(iq, t) == doctest::Approx(divq.coeffs[t]).epsilon(1e-11));
  }
}
