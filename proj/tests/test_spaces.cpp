#include "anisofem/spaces.hpp"

#include <doctest.h>

#include <memory>
#include <random>

using namespace anisofem;

namespace {

FeFunction make_fn(const Mesh& m, SpaceKind kind) {
  auto d = std::make_shared<const DofMap>(build_dofmap(m, kind));
  return FeFunction{d, Eigen::VectorXd::Zero(d->dof_count)};
}

// barycentric midpoint of local edge i (the edge opposite vertex i)
Eigen::Vector3d edge_mid_bary(int i) {
  Eigen::Vector3d l(0.5, 0.5, 0.5);
  l[i] = 0.0;
  return l;
}

const Eigen::Vector3d kInterior(0.2, 0.3, 0.5);

}  // namespace

TEST_CASE("dof counts per space") {
  const Mesh m = generate_aniso(10, 32);
  CHECK(build_dofmap(m, SpaceKind::P1).dof_count == 379);
  CHECK(build_dofmap(m, SpaceKind::CR).dof_count == 1050);
  CHECK(build_dofmap(m, SpaceKind::RT0).dof_count == 1050);
  CHECK(build_dofmap(m, SpaceKind::P0).dof_count == 672);

  const Mesh s = generate_aniso(2, 2);
  CHECK(build_dofmap(s, SpaceKind::P0).dof_count == 10);
  // 19 edges, 8 of them on the boundary
  const DofMap cr = build_dofmap(s, SpaceKind::CR);
  CHECK(cr.dof_count == 19);
  CHECK(cr.free_count == 11);
  // 10 vertices, 8 on the boundary
  const DofMap p1 = build_dofmap(s, SpaceKind::P1);
  CHECK(p1.free_count == 2);
  // no essential conditions for RT0 / P0
  CHECK(build_dofmap(s, SpaceKind::RT0).free_count == 19);
  CHECK(build_dofmap(s, SpaceKind::P0).free_count == 10);
}

TEST_CASE("free_index enumerates exactly the interior dofs") {
  const Mesh m = generate_aniso(3, 4);
  for (const SpaceKind k : {SpaceKind::P1, SpaceKind::CR}) {
    const DofMap d = build_dofmap(m, k);
    int seen = 0;
    for (int i = 0; i < d.dof_count; ++i) {
      if (d.dof_on_boundary[i]) {
        CHECK(d.free_index[i] == -1);
      } else {
        CHECK(d.free_index[i] == seen);
        ++seen;
      }
    }
    CHECK(seen == d.free_count);
  }
}

TEST_CASE("P1 and CR reproduce constants through the partition of unity") {
  const Mesh m = generate_aniso(2, 4);
  for (const SpaceKind k : {SpaceKind::P1, SpaceKind::CR}) {
    FeFunction f = make_fn(m, k);
    f.coeffs.setOnes();
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
      CHECK(eval_scalar(f, t, kInterior) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(gradient(f, t).norm() < 1e-12);
    }
  }
}

TEST_CASE("P1 is nodal on the vertices") {
  const Mesh m = generate_aniso(2, 2);
  FeFunction f = make_fn(m, SpaceKind::P1);
  for (size_t v = 0; v < m.vertices.size(); ++v) f.coeffs[v] = m.vertices[v].x();
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const Point2 p = map_barycentric(m.triangle_geom(t), kInterior);
    CHECK(eval_scalar(f, t, kInterior) == doctest::Approx(p.x()).epsilon(1e-14));
    CHECK((gradient(f, t) - Point2(1, 0)).norm() < 1e-13);
  }
}

TEST_CASE("CR reproduces affine functions from midpoint values") {
  const Mesh m = generate_aniso(3, 4);
  auto u = [](const Point2& p) { return 2.0 + p.x() + 2.0 * p.y(); };
  FeFunction f = make_fn(m, SpaceKind::CR);
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) f.coeffs[e] = u(m.edge_midpoint(e));
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const Point2 p = map_barycentric(m.triangle_geom(t), kInterior);
    CHECK(eval_scalar(f, t, kInterior) == doctest::Approx(u(p)).epsilon(1e-13));
    CHECK((gradient(f, t) - Point2(1, 2)).norm() < 1e-12);
  }
}

TEST_CASE("CR basis is nodal on edge midpoints") {
  const Mesh m = generate_aniso(2, 2);
  FeFunction f = make_fn(m, SpaceKind::CR);
  const DofMap& d = *f.dofmap;
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    for (int i = 0; i < 3; ++i) {
      f.coeffs.setZero();
      f.coeffs[d.element_dofs[t][i]] = 1.0;
      for (int j = 0; j < 3; ++j) {
        const double expect = i == j ? 1.0 : 0.0;
        CHECK(eval_scalar(f, t, edge_mid_bary(j)) == doctest::Approx(expect).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("CR functions are continuous at shared edge midpoints") {
  const Mesh m = generate_aniso(2, 4);
  FeFunction f = make_fn(m, SpaceKind::CR);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = u(rng);
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    if (m.edge_on_boundary(e)) continue;
    double vals[2];
    for (int s = 0; s < 2; ++s) {
      const int t = m.edges[e].tris[s];
      int loc = -1;
      for (int i = 0; i < 3; ++i)
        if (m.tri_edges[t][i] == e) loc = i;
      REQUIRE(loc >= 0);
      vals[s] = eval_scalar(f, t, edge_mid_bary(loc));
    }
    CHECK(vals[0] == doctest::Approx(vals[1]).epsilon(1e-13));
  }
}

TEST_CASE("RT0 reproduces fields of its own space") {
  const Mesh m = generate_aniso(2, 4);
  FeFunction f = make_fn(m, SpaceKind::RT0);

  // q(x) = x is an RT0 field with divergence 2
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e)
    f.coeffs[e] = m.edge_midpoint(e).dot(m.edge_normal(e));
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const Point2 p = map_barycentric(m.triangle_geom(t), kInterior);
    CHECK((eval_vector(f, t, kInterior) - p).norm() < 1e-12);
    CHECK(divergence(f, t) == doctest::Approx(2.0).epsilon(1e-12));
  }

  // a constant field has divergence zero
  const Point2 c(1.0, -0.5);
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e)
    f.coeffs[e] = c.dot(m.edge_normal(e));
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    CHECK((eval_vector(f, t, kInterior) - c).norm() < 1e-13);
    CHECK(std::abs(divergence(f, t)) < 1e-12);
  }
}

TEST_CASE("RT0 basis has unit mean normal density on its own edge") {
  const Mesh m = generate_aniso(2, 2);
  FeFunction f = make_fn(m, SpaceKind::RT0);
  const DofMap& d = *f.dofmap;
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    for (int i = 0; i < 3; ++i) {
      f.coeffs.setZero();
      f.coeffs[d.element_dofs[t][i]] = 1.0;
      for (int j = 0; j < 3; ++j) {
        // the normal component of an RT0 field is constant along each edge,
        // so the midpoint value is the mean normal density
        const int ej = d.element_dofs[t][j];
        const double dens = eval_vector(f, t, edge_mid_bary(j)).dot(m.edge_normal(ej));
        CHECK(dens == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("RT0 signs pair up across interior edges") {
  const Mesh m = generate_aniso(3, 4);
  const DofMap d = build_dofmap(m, SpaceKind::RT0);
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    if (m.edge_on_boundary(e)) continue;
    double prod = 1.0;
    for (int s = 0; s < 2; ++s) {
      const int t = m.edges[e].tris[s];
      for (int i = 0; i < 3; ++i)
        if (d.element_dofs[t][i] == e) prod *= d.element_signs[t][i];
    }
    // outward normals of the two triangles are opposite, so exactly one of
    // them matches the global edge normal
    CHECK(prod == -1.0);
  }
}

TEST_CASE("evaluation guards the space kind") {
  const Mesh m = generate_aniso(1, 2);
  FeFunction rt = make_fn(m, SpaceKind::RT0);
  FeFunction p1 = make_fn(m, SpaceKind::P1);
  FeFunction p0 = make_fn(m, SpaceKind::P0);
  CHECK_THROWS_AS(eval_scalar(rt, 0, kInterior), std::invalid_argument);
  CHECK_THROWS_AS(eval_vector(p1, 0, kInterior), std::invalid_argument);
  CHECK_THROWS_AS(gradient(rt, 0), std::invalid_argument);
  CHECK_THROWS_AS(gradient(p0, 0), std::invalid_argument);
  CHECK_THROWS_AS(divergence(p1, 0), std::invalid_argument);
}

TEST_CASE("P0 evaluation is the element constant") {
  const Mesh m = generate_aniso(2, 2);
  FeFunction f = make_fn(m, SpaceKind::P0);
  for (int t = 0; t < f.coeffs.size(); ++t) f.coeffs[t] = 0.5 * t;
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t)
    CHECK(eval_scalar(f, t, kInterior) == 0.5 * t);
}
