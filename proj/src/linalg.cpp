#include "anisofem/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <stdexcept>

namespace anisofem {

std::pair<Eigen::VectorXd, SolveReport> cg_solve(const SparseMat& A, const Eigen::VectorXd& b,
                                                 double tol, int max_iter) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n) throw std::invalid_argument("cg_solve: dimension mismatch");

  Eigen::VectorXd inv_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = A.coeff(i, i);
    if (d == 0.0) throw std::invalid_argument("cg_solve: zero diagonal entry");
    inv_diag[i] = 1.0 / d;
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return {x, {0, 0.0, true}};

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);

  SolveReport rep;
  for (rep.iterations = 0; rep.iterations < max_iter; ++rep.iterations) {
    rep.relative_residual = r.norm() / bnorm;
    if (rep.relative_residual <= tol) {
      rep.converged = true;
      return {x, rep};
    }
    const Eigen::VectorXd Ap = A * p;
    const double alpha = rz / p.dot(Ap);
    x += alpha * p;
    r -= alpha * Ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    if (rz_next == 0.0) {
      // the residual vanished exactly; there is no direction left to search
      ++rep.iterations;
      rep.relative_residual = 0.0;
      rep.converged = 0.0 <= tol;
      return {x, rep};
    }
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  rep.relative_residual = r.norm() / bnorm;
  rep.converged = rep.relative_residual <= tol;
  return {x, rep};
}

double dense_min_singular_generalized(const SparseMat& div_op, const SparseMat& mass,
                                      const Eigen::VectorXd& weights) {
  const Eigen::Index nt = div_op.rows();
  const Eigen::Index ne = div_op.cols();
  if (mass.rows() != ne || mass.cols() != ne || weights.size() != nt)
    throw std::invalid_argument("dense_min_singular_generalized: dimension mismatch");
  if (nt + ne > 2000)
    throw std::invalid_argument("dense_min_singular_generalized: problem too large for dense path");
  if ((weights.array() <= 0.0).any())
    throw std::invalid_argument("dense_min_singular_generalized: weights must be positive");

  const Eigen::MatrixXd B = Eigen::MatrixXd(div_op);
  const Eigen::MatrixXd M = Eigen::MatrixXd(mass);
  const Eigen::VectorXd inv_w = weights.cwiseInverse();

  const Eigen::MatrixXd H = M + B.transpose() * inv_w.asDiagonal() * B;
  const Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("dense_min_singular_generalized: H(div) norm matrix not positive definite");

  const Eigen::MatrixXd G = llt.matrixL().solve(
      Eigen::MatrixXd(B.transpose() * weights.cwiseSqrt().cwiseInverse().asDiagonal()));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
  return svd.singularValues().minCoeff();
}

}  // namespace anisofem
