#include "anisofem/assembly.hpp"

#include <stdexcept>
#include <vector>

namespace anisofem {

namespace {

void require_primal_kind(SpaceKind kind, const char* what) {
  if (kind != SpaceKind::P1 && kind != SpaceKind::CR)
    throw std::invalid_argument(std::string(what) + ": needs a P1 or CR space");
}

}  // namespace

Eigen::Matrix3d element_stiffness(SpaceKind kind, const TriangleGeom& t) {
  require_primal_kind(kind, "element_stiffness");
  const Eigen::Matrix<double, 3, 2> g = barycentric_gradients(t);
  const double scale = kind == SpaceKind::CR ? 4.0 : 1.0;
  return scale * area(t) * (g * g.transpose());
}

Eigen::Vector3d element_load(SpaceKind kind, const TriangleGeom& t, const ScalarField& f,
                             int rule_degree) {
  require_primal_kind(kind, "element_load");
  const QuadRule& rule = quad_rule(rule_degree);
  const double a = area(t);
  Eigen::Vector3d load = Eigen::Vector3d::Zero();
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    const Eigen::Vector3d lambda = rule.points.row(q).transpose();
    const double fw = rule.weights[q] * f(map_barycentric(t, lambda));
    for (int i = 0; i < 3; ++i) {
      const double basis = kind == SpaceKind::P1 ? lambda[i] : 1.0 - 2.0 * lambda[i];
      load[i] += fw * basis;
    }
  }
  return a * load;
}

namespace {

LinearSystem assemble_primal_impl(const Mesh& m, const DofMap& d,
                                  const std::function<Eigen::Vector3d(int, const TriangleGeom&)>& load) {
  require_primal_kind(d.kind, "assemble_primal");
  if (d.mesh != &m) throw std::invalid_argument("assemble_primal: dofmap belongs to another mesh");

  LinearSystem sys;
  sys.free_to_dof.reserve(static_cast<std::size_t>(d.free_count));
  for (int i = 0; i < d.dof_count; ++i) {
    if (d.free_index[static_cast<std::size_t>(i)] >= 0) sys.free_to_dof.push_back(i);
  }
  sys.rhs = Eigen::VectorXd::Zero(d.free_count);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(m.triangle_count()) * 9);
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    const Eigen::Matrix3d ke = element_stiffness(d.kind, g);
    const Eigen::Vector3d fe = load(t, g);
    const auto& dofs = d.element_dofs[static_cast<std::size_t>(t)];
    for (int i = 0; i < 3; ++i) {
      const int fi = d.free_index[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])];
      if (fi < 0) continue;
      sys.rhs[fi] += fe[i];
      for (int j = 0; j < 3; ++j) {
        const int fj = d.free_index[static_cast<std::size_t>(dofs[static_cast<std::size_t>(j)])];
        if (fj >= 0) trips.emplace_back(fi, fj, ke(i, j));
      }
    }
  }
  sys.matrix.resize(d.free_count, d.free_count);
  sys.matrix.setFromTriplets(trips.begin(), trips.end());
  return sys;
}

}  // namespace

LinearSystem assemble_primal(const Mesh& m, const DofMap& d, const ScalarField& f,
                             int rule_degree) {
  return assemble_primal_impl(m, d, [&](int, const TriangleGeom& g) {
    return element_load(d.kind, g, f, rule_degree);
  });
}

LinearSystem assemble_primal(const Mesh& m, const DofMap& d, const Eigen::VectorXd& f_elementwise) {
  if (f_elementwise.size() != m.triangle_count())
    throw std::invalid_argument("assemble_primal: elementwise data size mismatch");
  // int_K phi_i = |K|/3 for both the P1 and the CR basis.
  return assemble_primal_impl(m, d, [&](int t, const TriangleGeom& g) {
    return Eigen::Vector3d::Constant(f_elementwise[t] * area(g) / 3.0).eval();
  });
}

MixedSystem assemble_mixed(const Mesh& m, const ScalarField& f, int rule_degree) {
  const DofMap d = build_dofmap(m, SpaceKind::RT0);
  const QuadRule& mass_rule = quad_rule(2);

  MixedSystem sys;
  sys.rhs_flux = Eigen::VectorXd::Zero(m.edge_count());
  sys.rhs_scalar.resize(m.triangle_count());

  std::vector<Eigen::Triplet<double>> mass_trips, div_trips;
  mass_trips.reserve(static_cast<std::size_t>(m.triangle_count()) * 9);
  div_trips.reserve(static_cast<std::size_t>(m.triangle_count()) * 3);

  const ScalarField& f_ref = f;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    const double a = area(g);
    const Point2 corner[3] = {g.p1, g.p2, g.p3};
    const auto& dofs = d.element_dofs[static_cast<std::size_t>(t)];
    const auto& signs = d.element_signs[static_cast<std::size_t>(t)];
    double len[3];
    for (int i = 0; i < 3; ++i) len[i] = m.edge_length(dofs[static_cast<std::size_t>(i)]);

    Eigen::Matrix3d me = Eigen::Matrix3d::Zero();
    for (Eigen::Index q = 0; q < mass_rule.weights.size(); ++q) {
      const Point2 x = map_barycentric(g, mass_rule.points.row(q).transpose());
      Point2 psi[3];
      for (int i = 0; i < 3; ++i)
        psi[i] = signs[static_cast<std::size_t>(i)] * len[i] / (2.0 * a) * (x - corner[i]);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) me(i, j) += mass_rule.weights[q] * psi[i].dot(psi[j]);
      }
    }
    me *= a;

    for (int i = 0; i < 3; ++i) {
      div_trips.emplace_back(t, dofs[static_cast<std::size_t>(i)],
                             signs[static_cast<std::size_t>(i)] * len[i]);
      for (int j = 0; j < 3; ++j)
        mass_trips.emplace_back(dofs[static_cast<std::size_t>(i)], dofs[static_cast<std::size_t>(j)],
                                me(i, j));
    }
    sys.rhs_scalar[t] = integrate(g, quad_rule(rule_degree), f_ref);
  }

  sys.mass.resize(m.edge_count(), m.edge_count());
  sys.mass.setFromTriplets(mass_trips.begin(), mass_trips.end());
  sys.div_op.resize(m.triangle_count(), m.edge_count());
  sys.div_op.setFromTriplets(div_trips.begin(), div_trips.end());
  return sys;
}

}  // namespace anisofem
