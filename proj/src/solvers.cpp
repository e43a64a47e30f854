#include "anisofem/solvers.hpp"

#include <cmath>
#include <memory>

namespace anisofem {

PoissonProblem make_bubble_problem() {
  PoissonProblem p;
  p.f = [](const Point2& x) {
    return 2.0 * x.x() * (1.0 - x.x()) + 2.0 * x.y() * (1.0 - x.y());
  };
  p.exact_u = [](const Point2& x) {
    return x.x() * (1.0 - x.x()) * x.y() * (1.0 - x.y());
  };
  p.exact_grad = [](const Point2& x) {
    return Point2((1.0 - 2.0 * x.x()) * x.y() * (1.0 - x.y()),
                  x.x() * (1.0 - x.x()) * (1.0 - 2.0 * x.y()));
  };
  return p;
}

namespace {

// The solvers impose u = 0 on the boundary; supplied exact solutions must
// agree there or every error report would be meaningless.
void check_dirichlet_data(const Mesh& m, const PoissonProblem& prob) {
  if (!prob.exact_u) return;
  for (int e = 0; e < m.edge_count(); ++e) {
    if (!m.edge_on_boundary(e)) continue;
    const Edge& ed = m.edges[static_cast<std::size_t>(e)];
    for (const Point2& x : {m.vertices[static_cast<std::size_t>(ed.v0)], m.edge_midpoint(e)}) {
      if (std::abs(prob.exact_u(x)) > 1e-12)
        throw std::invalid_argument("solve: exact_u does not vanish on the boundary");
    }
  }
}

FeFunction scatter_solution(std::shared_ptr<const DofMap> dofmap, const LinearSystem& sys,
                            const Eigen::VectorXd& free_values) {
  FeFunction u;
  u.dofmap = std::move(dofmap);
  u.coeffs = Eigen::VectorXd::Zero(u.dofmap->dof_count);
  for (std::size_t i = 0; i < sys.free_to_dof.size(); ++i)
    u.coeffs[sys.free_to_dof[i]] = free_values[static_cast<Eigen::Index>(i)];
  return u;
}

FeFunction solve_primal(const Mesh& m, SpaceKind kind, const LinearSystem& sys, double tol) {
  auto dofmap = std::make_shared<DofMap>(build_dofmap(m, kind));
  auto [x, rep] = cg_solve(sys.matrix, sys.rhs, tol, 20 * static_cast<int>(sys.matrix.rows()) + 100);
  if (!rep.converged) {
    throw SolveFailure("solve: cg stalled at relative residual " +
                           std::to_string(rep.relative_residual) + " after " +
                           std::to_string(rep.iterations) + " iterations",
                       rep);
  }
  return scatter_solution(std::move(dofmap), sys, x);
}

}  // namespace

FeFunction solve_p1(const Mesh& m, const PoissonProblem& prob, double tol, int rule_degree) {
  check_dirichlet_data(m, prob);
  const DofMap d = build_dofmap(m, SpaceKind::P1);
  return solve_primal(m, SpaceKind::P1, assemble_primal(m, d, prob.f, rule_degree), tol);
}

FeFunction solve_cr(const Mesh& m, const PoissonProblem& prob, double tol, int rule_degree) {
  check_dirichlet_data(m, prob);
  const DofMap d = build_dofmap(m, SpaceKind::CR);
  return solve_primal(m, SpaceKind::CR, assemble_primal(m, d, prob.f, rule_degree), tol);
}

RtSolution solve_rt(const Mesh& m, const PoissonProblem& prob, double tol, int rule_degree) {
  check_dirichlet_data(m, prob);
  // pi0 f: elementwise means, exact up to the quadrature degree.
  Eigen::VectorXd fbar(m.triangle_count());
  const QuadRule& rule = quad_rule(rule_degree);
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    double s = 0.0;
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q)
      s += rule.weights[q] * prob.f(map_barycentric(g, rule.points.row(q).transpose()));
    fbar[t] = s;
  }

  const DofMap d_cr = build_dofmap(m, SpaceKind::CR);
  const FeFunction u_cr = solve_primal(m, SpaceKind::CR, assemble_primal(m, d_cr, fbar), tol);

  auto d_rt = std::make_shared<DofMap>(build_dofmap(m, SpaceKind::RT0));
  auto d_p0 = std::make_shared<DofMap>(build_dofmap(m, SpaceKind::P0));

  FeFunction flux;
  flux.dofmap = d_rt;
  flux.coeffs.resize(m.edge_count());
  FeFunction scalar;
  scalar.dofmap = d_p0;
  scalar.coeffs.resize(m.triangle_count());

  std::vector<char> assigned(static_cast<std::size_t>(m.edge_count()), 0);
  const Eigen::Vector3d centroid(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    const Point2 xc = map_barycentric(g, centroid);
    const Point2 grad_cr = gradient(u_cr, t);
    const auto& edges = m.tri_edges[static_cast<std::size_t>(t)];
    for (int i = 0; i < 3; ++i) {
      const int e = edges[static_cast<std::size_t>(i)];
      const Point2 p_mid = grad_cr - 0.5 * fbar[t] * (m.edge_midpoint(e) - xc);
      const double dof = p_mid.dot(m.edge_normal(e));
      if (assigned[static_cast<std::size_t>(e)]) {
        const double prev = flux.coeffs[e];
        if (std::abs(prev - dof) > 1e-9 * (1.0 + std::max(std::abs(prev), std::abs(dof))))
          throw std::runtime_error("solve_rt: reconstructed flux is discontinuous across edge " +
                                   std::to_string(e));
      } else {
        flux.coeffs[e] = dof;
        assigned[static_cast<std::size_t>(e)] = 1;
      }
    }

    const Point2 corner[3] = {g.p1, g.p2, g.p3};
    double dist_sq = 0.0;
    for (const Point2& c : corner) dist_sq += (c - xc).squaredNorm();
    double mean_cr = 0.0;
    for (int i = 0; i < 3; ++i)
      mean_cr += u_cr.coeffs[d_cr.element_dofs[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]] / 3.0;
    scalar.coeffs[t] = mean_cr + fbar[t] / 48.0 * dist_sq;
  }

  // div p + pi0 f = 0 must hold elementwise by construction.
  for (int t = 0; t < m.triangle_count(); ++t) {
    const double dv = divergence(flux, t);
    if (std::abs(dv + fbar[t]) > 1e-11 * (1.0 + std::abs(fbar[t])))
      throw std::runtime_error("solve_rt: divergence identity violated on element " + std::to_string(t));
  }
  return {std::move(flux), std::move(scalar)};
}

}  // namespace anisofem
