#pragma once

#include "anisofem/linalg.hpp"

#include <stdexcept>

namespace anisofem {

/// -laplace u = f on the unit square, u = 0 on the boundary. The exact
/// fields are optional and only consumed by error reporting.
struct PoissonProblem {
  ScalarField f;
  ScalarField exact_u;   // may be empty
  VectorFn exact_grad;   // may be empty
};

/// u = x(1-x) y(1-y) with f = 2x(1-x) + 2y(1-y); |u|_1 = 1/sqrt(45).
PoissonProblem make_bubble_problem();

struct SolveFailure : std::runtime_error {
  SolveFailure(const std::string& what, SolveReport r) : std::runtime_error(what), report(r) {}
  SolveReport report;
};

/// Conforming P1 solution; load integrated with the given quadrature degree.
FeFunction solve_p1(const Mesh& m, const PoissonProblem& prob, double tol, int rule_degree = 6);

/// Nonconforming Crouzeix-Raviart solution.
FeFunction solve_cr(const Mesh& m, const PoissonProblem& prob, double tol, int rule_degree = 6);

struct RtSolution {
  FeFunction flux;    // RT0
  FeFunction scalar;  // P0
};

/// Lowest-order mixed solution obtained without touching the saddle-point
/// system: solve CR for the elementwise-averaged data, then reconstruct
///   p_K = grad u_CR - (pi0 f)_K / 2 (x - x_K),
///   u_K = mean_K(u_CR) + (pi0 f)_K / 48 sum_i |x_i - x_K|^2
/// with x_K the centroid. The reconstructed normal fluxes are checked for
/// inter-element consistency and div p + pi0 f = 0 holds elementwise.
RtSolution solve_rt(const Mesh& m, const PoissonProblem& prob, double tol, int rule_degree = 6);

}  // namespace anisofem
