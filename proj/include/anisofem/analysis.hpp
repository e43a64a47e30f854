#pragma once

#include "anisofem/solvers.hpp"

#include <utility>
#include <vector>

namespace anisofem {

/// A2 = 1/theta* with theta* the root of tan(theta) + theta = 0 in
/// (pi/2, pi); C2_2 = 4 sqrt(2) A2 bounds the RT0 interpolation error as
/// |q - Iq|_0 <= C2_2 R_K |q|_1, so meshes with circumradius below
/// R_threshold = 1/C2_2 keep the interpolation contractive.
struct Constants {
  double A2 = 0.0;
  double C2_2 = 0.0;
  double R_threshold = 0.0;
};

Constants babuska_aziz();

/// Smooth vector field with the derivatives the element bounds consume.
/// `div_gradient` (gradient of the divergence) may be empty when only the
/// L2 bound is of interest.
struct VectorField {
  VectorFn value;
  std::function<Eigen::Matrix2d(const Point2&)> jacobian;
  VectorFn div_gradient;
};

/// Edgewise RT0 interpolant: dof_e = (1/|e|) int_e q.n ds by 3-point Gauss.
FeFunction rt_interpolate(const Mesh& m, const VectorFn& q);

/// Elementwise means by quadrature.
FeFunction pi0_project(const Mesh& m, const ScalarField& g, int rule_degree = 6);

/// The thin-triangle family (1,0), (-1,0), (0, h) with the rotation-like
/// field q = (y - (1+h^2)/(2h), x): the interpolant vanishes while
/// |q - Iq|_0 / |q - Iq|_1 grows like the circumradius, so no bound of the
/// form C h can hold.
struct SharpnessCase {
  double e0_sq = 0.0;          // |q - Iq|_0^2 by quadrature
  double e1_sq = 0.0;          // |q - Iq|_1^2 by quadrature
  double ratio = 0.0;          // sqrt(e0_sq / e1_sq)
  double circumradius = 0.0;
  double iq_max_abs_dof = 0.0; // how exactly the interpolant vanishes
};

SharpnessCase sharpness_case(double h);

/// Worst elementwise ratios |q - Iq|_{0,K} / (R_K |q|_{1,K}) and
/// |div q - div Iq|_{0,K} / (h_K |div q|_{1,K}); elements with an exactly
/// zero denominator are skipped.
struct InterpBoundRatios {
  double l2_over_R = 0.0;
  double div_over_h = 0.0;
};

InterpBoundRatios interp_bound_check(const Mesh& m, const VectorField& q);

/// Error norms of a scalar FE solution against exact fields. The broken H1
/// seminorm applies to P1/CR; for P0 only the L2 part is populated.
struct ErrorReport {
  double l2 = 0.0;
  double h1_broken = 0.0;
  Eigen::VectorXd per_element_l2_sq;
  Eigen::VectorXd per_element_h1_sq;
};

ErrorReport error_norms(const Mesh& m, const FeFunction& u_h, const ScalarField& exact_u,
                        const VectorFn& exact_grad, int rule_degree = 6);

/// L2 error of an RT0 field against an exact vector field.
ErrorReport flux_error_norms(const Mesh& m, const FeFunction& p_h, const VectorFn& exact_q,
                             int rule_degree = 6);

/// Worst elementwise ratio |g - pi0 g|_{0,K} / (h_K |g|_{1,K}), the
/// piecewise-constant projection counterpart of the interpolation bounds.
double pw_projection_check(const Mesh& m, const ScalarField& g, const VectorFn& grad_g,
                           int rule_degree = 6);

/// Largest mismatch of the normal component of an RT0 field across interior
/// edges, evaluated from both sides at the edge midpoints.
double max_normal_jump(const Mesh& m, const FeFunction& rt);

/// Relative residual of an RT solution in the assembled first-order system:
/// max of ||M p + B^T u|| against the size of its two terms and
/// ||B p + int f|| against ||int f||.
double mixed_residual(const Mesh& m, const ScalarField& f, const RtSolution& sol,
                      int rule_degree = 6);

/// Five fixed smooth fields (with analytic derivatives) used by the
/// interpolation bound checks.
const std::vector<std::pair<std::string, VectorField>>& standard_vector_fields();

}  // namespace anisofem
