#pragma once

#include "anisofem/spaces.hpp"

#include <Eigen/Sparse>

namespace anisofem {

/// CSR storage throughout.
using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Reduced system over the free dofs of a Dirichlet space.
/// Row/column i of `matrix` belongs to dof `free_to_dof[i]`.
struct LinearSystem {
  SparseMat matrix;
  Eigen::VectorXd rhs;
  std::vector<int> free_to_dof;
};

/// Local stiffness integral grad phi_i . grad phi_j; P1 or CR.
Eigen::Matrix3d element_stiffness(SpaceKind kind, const TriangleGeom& t);

/// Local load integral f phi_i by quadrature of the given degree; P1 or CR.
Eigen::Vector3d element_load(SpaceKind kind, const TriangleGeom& t, const ScalarField& f,
                             int rule_degree);

/// Stiffness system for -laplace u = f with zero boundary values.
LinearSystem assemble_primal(const Mesh& m, const DofMap& d, const ScalarField& f, int rule_degree);

/// Same load with an elementwise constant right-hand side (exact integration).
LinearSystem assemble_primal(const Mesh& m, const DofMap& d, const Eigen::VectorXd& f_elementwise);

/// First-order system for the flux form: mass is the RT0 Gram matrix,
/// div_op maps RT0 dofs to elementwise divergence integrals
/// (entries sigma_i |e_i|), rhs_scalar holds int_K f.
struct MixedSystem {
  SparseMat mass;      // E x E
  SparseMat div_op;    // T x E
  Eigen::VectorXd rhs_flux;    // zero for this problem
  Eigen::VectorXd rhs_scalar;  // int_K f
};

MixedSystem assemble_mixed(const Mesh& m, const ScalarField& f, int rule_degree);

}  // namespace anisofem
