#pragma once

#include "anisofem/assembly.hpp"

namespace anisofem {

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for an SPD matrix, zero start.
/// Stops when ||b - A x|| <= tol ||b||; throws on a zero diagonal entry.
/// Deterministic: identical inputs give identical iterates.
std::pair<Eigen::VectorXd, SolveReport> cg_solve(const SparseMat& A, const Eigen::VectorXd& b,
                                                 double tol, int max_iter);

/// Smallest singular value of L^{-1} B^T D^{-1/2} where M + B^T D^{-1} B =
/// L L^T, i.e. the inf-sup constant of the divergence operator B against the
/// H(div) norm induced by mass matrix M and diagonal weights D (all positive).
/// Dense computation; throws if rows(B) + cols(B) exceeds 2000.
double dense_min_singular_generalized(const SparseMat& div_op, const SparseMat& mass,
                                      const Eigen::VectorXd& weights);

}  // namespace anisofem
