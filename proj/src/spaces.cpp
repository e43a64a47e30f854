#include "anisofem/spaces.hpp"

#include <stdexcept>

namespace anisofem {

DofMap build_dofmap(const Mesh& m, SpaceKind kind) {
  DofMap d;
  d.kind = kind;
  d.mesh = &m;
  const std::size_t nt = static_cast<std::size_t>(m.triangle_count());
  d.element_dofs.resize(nt);

  switch (kind) {
    case SpaceKind::P1: {
      d.dof_count = m.vertex_count();
      for (std::size_t t = 0; t < nt; ++t) {
        for (int i = 0; i < 3; ++i)
          d.element_dofs[t][static_cast<std::size_t>(i)] = m.triangles[t][static_cast<std::size_t>(i)];
      }
      d.dof_on_boundary.assign(m.vertex_on_boundary.begin(), m.vertex_on_boundary.end());
      break;
    }
    case SpaceKind::CR:
    case SpaceKind::RT0: {
      d.dof_count = m.edge_count();
      for (std::size_t t = 0; t < nt; ++t) d.element_dofs[t] = m.tri_edges[t];
      d.dof_on_boundary.resize(static_cast<std::size_t>(m.edge_count()));
      for (int e = 0; e < m.edge_count(); ++e)
        d.dof_on_boundary[static_cast<std::size_t>(e)] = m.edge_on_boundary(e) ? 1 : 0;
      break;
    }
    case SpaceKind::P0: {
      d.dof_count = m.triangle_count();
      for (std::size_t t = 0; t < nt; ++t) d.element_dofs[t] = {static_cast<int>(t), -1, -1};
      d.dof_on_boundary.assign(nt, 0);
      break;
    }
  }

  if (kind == SpaceKind::RT0) {
    d.element_signs.resize(nt);
    for (std::size_t t = 0; t < nt; ++t) {
      const auto& tri = m.triangles[t];
      for (int i = 0; i < 3; ++i) {
        // Local edge i runs v_{i+1} -> v_{i+2} in the positively oriented
        // cycle; its outward normal equals the global normal exactly when the
        // traversal starts at the smaller vertex index.
        const int u = tri[static_cast<std::size_t>((i + 1) % 3)];
        const int v = tri[static_cast<std::size_t>((i + 2) % 3)];
        d.element_signs[t][static_cast<std::size_t>(i)] = u < v ? 1.0 : -1.0;
      }
    }
  }

  const bool dirichlet = kind == SpaceKind::P1 || kind == SpaceKind::CR;
  d.free_index.assign(static_cast<std::size_t>(d.dof_count), -1);
  d.free_count = 0;
  for (int i = 0; i < d.dof_count; ++i) {
    if (dirichlet && d.dof_on_boundary[static_cast<std::size_t>(i)]) continue;
    d.free_index[static_cast<std::size_t>(i)] = d.free_count++;
  }
  return d;
}

namespace {

void require_kind(const FeFunction& f, bool ok, const char* what) {
  if (!f.dofmap) throw std::invalid_argument(std::string(what) + ": function has no dofmap");
  if (!ok) throw std::invalid_argument(std::string(what) + ": wrong space kind");
}

}  // namespace

double eval_scalar(const FeFunction& f, int elem, const Eigen::Vector3d& lambda) {
  const SpaceKind k = f.dofmap ? f.dofmap->kind : SpaceKind::RT0;
  require_kind(f, k != SpaceKind::RT0, "eval_scalar");
  const auto& dofs = f.dofmap->element_dofs[static_cast<std::size_t>(elem)];
  if (k == SpaceKind::P0) return f.coeffs[dofs[0]];
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double basis = k == SpaceKind::P1 ? lambda[i] : 1.0 - 2.0 * lambda[i];
    s += f.coeffs[dofs[static_cast<std::size_t>(i)]] * basis;
  }
  return s;
}

Point2 eval_vector(const FeFunction& f, int elem, const Eigen::Vector3d& lambda) {
  require_kind(f, f.dofmap && f.dofmap->kind == SpaceKind::RT0, "eval_vector");
  const Mesh& m = *f.dofmap->mesh;
  const TriangleGeom g = m.triangle_geom(elem);
  const double a = area(g);
  const Point2 x = map_barycentric(g, lambda);
  const Point2 corner[3] = {g.p1, g.p2, g.p3};
  const auto& dofs = f.dofmap->element_dofs[static_cast<std::size_t>(elem)];
  const auto& signs = f.dofmap->element_signs[static_cast<std::size_t>(elem)];
  Point2 val = Point2::Zero();
  for (int i = 0; i < 3; ++i) {
    const double len = m.edge_length(dofs[static_cast<std::size_t>(i)]);
    val += f.coeffs[dofs[static_cast<std::size_t>(i)]] * signs[static_cast<std::size_t>(i)] * len /
           (2.0 * a) * (x - corner[i]);
  }
  return val;
}

Point2 gradient(const FeFunction& f, int elem) {
  const SpaceKind k = f.dofmap ? f.dofmap->kind : SpaceKind::RT0;
  require_kind(f, k == SpaceKind::P1 || k == SpaceKind::CR, "gradient");
  const TriangleGeom g = f.dofmap->mesh->triangle_geom(elem);
  const Eigen::Matrix<double, 3, 2> grads = barycentric_gradients(g);
  const auto& dofs = f.dofmap->element_dofs[static_cast<std::size_t>(elem)];
  Point2 val = Point2::Zero();
  for (int i = 0; i < 3; ++i) {
    const double factor = k == SpaceKind::P1 ? 1.0 : -2.0;
    val += factor * f.coeffs[dofs[static_cast<std::size_t>(i)]] * grads.row(i).transpose();
  }
  return val;
}

double divergence(const FeFunction& f, int elem) {
  require_kind(f, f.dofmap && f.dofmap->kind == SpaceKind::RT0, "divergence");
  const Mesh& m = *f.dofmap->mesh;
  const double a = area(m.triangle_geom(elem));
  const auto& dofs = f.dofmap->element_dofs[static_cast<std::size_t>(elem)];
  const auto& signs = f.dofmap->element_signs[static_cast<std::size_t>(elem)];
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    s += f.coeffs[dofs[static_cast<std::size_t>(i)]] * signs[static_cast<std::size_t>(i)] *
         m.edge_length(dofs[static_cast<std::size_t>(i)]) / a;
  }
  return s;
}

}  // namespace anisofem
