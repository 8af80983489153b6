#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "etdg/mesh.hpp"

namespace etdg {

/// Dimension of P^p on a triangle, (p+1)(p+2)/2. Zero for negative p.
constexpr int dim_poly(int p) { return p < 0 ? 0 : (p + 1) * (p + 2) / 2; }

/// Values, gradients and Laplacians of a set of basis functions at one point.
struct BasisEval {
  Eigen::VectorXd values;
  Eigen::MatrixX2d gradients;  // row i = grad phi_i
  Eigen::VectorXd laplacians;
};

/// m_{a,b}(x) = ((x - x_K)/h_K)^a ((y - y_K)/h_K)^b for a + b <= p, ordered by total
/// degree d and then by b (so index = d(d+1)/2 + b).
class ScaledMonomialBasis {
 public:
  ScaledMonomialBasis(int degree, Point center, double scale);
  ScaledMonomialBasis(const ElementGeometry& g, int degree)
      : ScaledMonomialBasis(degree, g.incenter, g.diameter) {}

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int size() const { return dim_poly(degree_); }
  [[nodiscard]] const Point& center() const { return center_; }
  [[nodiscard]] double scale() const { return scale_; }

  [[nodiscard]] BasisEval eval(const Point& x) const;
  [[nodiscard]] Eigen::VectorXd values(const Point& x) const;

  static int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }

 private:
  int degree_;
  Point center_;
  double scale_;
};

/// Quadrature on the reference triangle (0,0),(1,0),(0,1). Weights sum to 1/2.
struct QuadratureRule {
  std::vector<Eigen::Vector2d> points;  // reference coordinates (xi, eta)
  std::vector<double> weights;
  int order = 0;
};

/// Quadrature mapped onto a physical element or face; weights include the Jacobian.
struct PhysicalQuadrature {
  std::vector<Point> points;
  std::vector<double> weights;
};

/// Collapsed Gauss-Legendre (Duffy) rule, exact for total degree <= order.
/// Supported orders: 1..30.
const QuadratureRule& quadrature_rule(int order);

/// Gauss-Legendre rule on [0,1], exact for degree <= order (1..60).
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int order = 0;
};
const EdgeRule& edge_quadrature_rule(int order);

PhysicalQuadrature map_to_triangle(const QuadratureRule& rule, const std::array<Point, 3>& corners);
PhysicalQuadrature map_to_segment(const EdgeRule& rule, const Point& a, const Point& b);

/// Physical quadrature of an element at a given order.
PhysicalQuadrature element_quadrature(const Mesh& mesh, int element, int order);

/// Bubble space (|x - x_K|^2 - r_K^2) * P^{p-2}(K), represented by its coefficients in
/// the degree-p scaled monomial basis (columns).
struct BubbleBasis {
  int degree = 0;
  Point center = Point::Zero();
  double radius = 0.0;
  double scale = 1.0;
  Eigen::MatrixXd coefficients;  // dim_poly(p) x dim_poly(p-2)

  [[nodiscard]] int size() const { return static_cast<int>(coefficients.cols()); }
  [[nodiscard]] Eigen::VectorXd values(const Point& x) const;
};
BubbleBasis bubble_basis(const ElementGeometry& g, int p);

enum class BasisKind {
  monomial,     // scaled monomials as they are
  orthonormal,  // L2(K)-orthonormalised scaled monomials
};

/// Element basis phi = T * m with m the scaled monomials and T lower triangular.
class ElementBasis {
 public:
  ElementBasis(const Mesh& mesh, int element, int degree, BasisKind kind);

  [[nodiscard]] int size() const { return monomials_.size(); }
  [[nodiscard]] int degree() const { return monomials_.degree(); }
  [[nodiscard]] BasisKind kind() const { return kind_; }
  [[nodiscard]] const ScaledMonomialBasis& monomials() const { return monomials_; }
  /// phi_i = sum_j transform(i, j) m_j
  [[nodiscard]] const Eigen::MatrixXd& transform() const { return transform_; }

  [[nodiscard]] BasisEval eval(const Point& x) const;
  [[nodiscard]] Eigen::VectorXd values(const Point& x) const;

 private:
  ScaledMonomialBasis monomials_;
  BasisKind kind_;
  Eigen::MatrixXd transform_;
};

/// Mass matrix of `basis` over element `element`, computed with quadrature of order 2p+2.
Eigen::MatrixXd mass_matrix(const Mesh& mesh, int element, const ElementBasis& basis);

}  // namespace etdg
