#pragma once

#include <Eigen/Dense>

#include <functional>

namespace anisofem {

using Point2 = Eigen::Vector2d;
using ScalarField = std::function<double(const Point2&)>;
using VectorFn = std::function<Point2(const Point2&)>;

/// Plain triangle; vertex order carries the orientation.
struct TriangleGeom {
  Point2 p1, p2, p3;
};

/// Shoelace formula, sign follows vertex order.
double signed_area(const TriangleGeom& t);

/// Longest pairwise vertex distance. Defined for any input, degenerate or not.
double diameter(const TriangleGeom& t);

/// A triangle is degenerate when its area is below 1e-14 * diameter^2.
bool is_degenerate(const TriangleGeom& t);

/// Positive area; throws std::invalid_argument on a degenerate triangle.
double area(const TriangleGeom& t);

/// R = abc / (4 area); throws on a degenerate triangle.
double circumradius(const TriangleGeom& t);

/// Copy with vertices reordered to positive orientation (p2/p3 swap if needed).
TriangleGeom oriented(const TriangleGeom& t);

/// Rows are the gradients of the barycentric coordinates lambda_1..3.
Eigen::Matrix<double, 3, 2> barycentric_gradients(const TriangleGeom& t);

/// Physical point of barycentric coordinates (l1, l2, l3), l1+l2+l3 = 1.
Point2 map_barycentric(const TriangleGeom& t, const Eigen::Vector3d& lambda);

/// Symmetric quadrature rule on the reference triangle in barycentric form.
/// Weights sum to 1; the rule integrates all polynomials of total degree
/// <= `degree` exactly.
struct QuadRule {
  int degree = 0;
  Eigen::Matrix<double, Eigen::Dynamic, 3> points;
  Eigen::VectorXd weights;
};

/// Cached rule exact for polynomials of total degree <= `degree` (1..6).
const QuadRule& quad_rule(int degree);

/// integrate = area(t) * sum_i w_i g(x_i) with x_i the mapped quadrature points.
double integrate(const TriangleGeom& t, const QuadRule& rule, const ScalarField& g);

}  // namespace anisofem
