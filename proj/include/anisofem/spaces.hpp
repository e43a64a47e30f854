#pragma once

#include "anisofem/mesh.hpp"

#include <memory>

namespace anisofem {

enum class SpaceKind { P1, CR, RT0, P0 };

/// Dof layout over a mesh. Dofs sit on vertices (P1), edges (CR midpoint
/// values, RT0 normal fluxes) or triangles (P0). For the Dirichlet spaces
/// P1/CR the boundary dofs are fixed to zero and excluded from the free set;
/// RT0 and P0 have no essential conditions.
///
/// RT0 dof convention: the dof on edge e is the mean normal density
/// (1/|e|) int_e q.n ds against the fixed global edge normal, so the basis
/// field on edge i of triangle K is sigma_i |e_i| / (2|K|) (x - x_i^opp)
/// with sigma_i = +-1 relating the outward to the global normal.
struct DofMap {
  SpaceKind kind = SpaceKind::P1;
  const Mesh* mesh = nullptr;
  int dof_count = 0;
  int free_count = 0;
  std::vector<std::array<int, 3>> element_dofs;   // P0 uses slot 0 only
  std::vector<std::array<double, 3>> element_signs;  // RT0 only, +-1
  std::vector<char> dof_on_boundary;
  std::vector<int> free_index;  // -1 for fixed dofs

  int local_dofs() const { return kind == SpaceKind::P0 ? 1 : 3; }
};

DofMap build_dofmap(const Mesh& m, SpaceKind kind);

/// Finite element function: coefficients over all dofs of a DofMap
/// (fixed dofs included, holding their boundary values).
struct FeFunction {
  std::shared_ptr<const DofMap> dofmap;
  Eigen::VectorXd coeffs;
};

/// Value of a scalar function (P1, CR, P0) at barycentric coordinates of
/// element `elem`; throws std::invalid_argument for RT0.
double eval_scalar(const FeFunction& f, int elem, const Eigen::Vector3d& lambda);

/// Value of an RT0 field; throws for scalar spaces.
Point2 eval_vector(const FeFunction& f, int elem, const Eigen::Vector3d& lambda);

/// Constant gradient on an element (P1, CR); throws for RT0 and P0.
Point2 gradient(const FeFunction& f, int elem);

/// Constant divergence on an element (RT0); throws otherwise.
double divergence(const FeFunction& f, int elem);

}  // namespace anisofem
