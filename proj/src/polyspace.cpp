#include "etdg/polyspace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace etdg {

namespace {

constexpr int kMaxTriangleOrder = 30;
constexpr int kMaxEdgeOrder = 60;

// n-point Gauss-Legendre on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

EdgeRule make_edge_rule(int order) {
  const int n = (order + 2) / 2;  // 2n - 1 >= order
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(n, x, w);
  EdgeRule r;
  r.order = order;
  // ascending order, symmetric about 1/2
  for (int i = n - 1; i >= 0; --i) {
    r.points.push_back(0.5 * (x[i] + 1.0));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}

QuadratureRule make_triangle_rule(int order) {
  // x = u (1 - v), y = v with Jacobian (1 - v); the integrand of degree q becomes degree q
  // in u and q + 1 in v.
  const int n = (order + 3) / 2;
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(n, x, w);
  QuadratureRule r;
  r.order = order;
  for (int j = 0; j < n; ++j) {
    const double v = 0.5 * (x[j] + 1.0);
    const double wv = 0.5 * w[j];
    for (int i = 0; i < n; ++i) {
      const double u = 0.5 * (x[i] + 1.0);
      const double wu = 0.5 * w[i];
      r.points.emplace_back(u * (1.0 - v), v);
      r.weights.push_back(wu * wv * (1.0 - v));
    }
  }
  return r;
}

}  // namespace

ScaledMonomialBasis::ScaledMonomialBasis(int degree, Point center, double scale)
    : degree_(degree), center_(std::move(center)), scale_(scale) {
  if (degree < 0) throw std::invalid_argument("ScaledMonomialBasis: negative degree");
  if (!(scale > 0.0)) throw std::invalid_argument("ScaledMonomialBasis: scale must be positive");
}

BasisEval ScaledMonomialBasis::eval(const Point& x) const {
  const int n = size();
  const double s = 1.0 / scale_;
  const double xh = (x.x() - center_.x()) * s;
  const double yh = (x.y() - center_.y()) * s;
  // powers[k] = xh^k, ypow[k] = yh^k
  std::vector<double> xp(degree_ + 1, 1.0);
  std::vector<double> yp(degree_ + 1, 1.0);
  for (int k = 1; k <= degree_; ++k) {
    xp[k] = xp[k - 1] * xh;
    yp[k] = yp[k - 1] * yh;
  }
  BasisEval e;
  e.values.resize(n);
  e.gradients.resize(n, 2);
  e.laplacians.resize(n);
  for (int d = 0; d <= degree_; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      const int i = index(a, b);
      e.values[i] = xp[a] * yp[b];
      e.gradients(i, 0) = a > 0 ? a * xp[a - 1] * yp[b] * s : 0.0;
      e.gradients(i, 1) = b > 0 ? b * xp[a] * yp[b - 1] * s : 0.0;
      double lap = 0.0;
      if (a > 1) lap += a * (a - 1) * xp[a - 2] * yp[b];
      if (b > 1) lap += b * (b - 1) * xp[a] * yp[b - 2];
      e.laplacians[i] = lap * s * s;
    }
  }
  return e;
}

Eigen::VectorXd ScaledMonomialBasis::values(const Point& x) const {
  const double xh = (x.x() - center_.x()) / scale_;
  const double yh = (x.y() - center_.y()) / scale_;
  std::vector<double> xp(degree_ + 1, 1.0);
  std::vector<double> yp(degree_ + 1, 1.0);
  for (int k = 1; k <= degree_; ++k) {
    xp[k] = xp[k - 1] * xh;
    yp[k] = yp[k - 1] * yh;
  }
  Eigen::VectorXd v(size());
  for (int d = 0; d <= degree_; ++d) {
    for (int b = 0; b <= d; ++b) v[index(d - b, b)] = xp[d - b] * yp[b];
  }
  return v;
}

const QuadratureRule& quadrature_rule(int order) {
  if (order < 1 || order > kMaxTriangleOrder) {
    throw std::invalid_argument("quadrature_rule: unsupported order " + std::to_string(order));
  }
  static const std::vector<QuadratureRule> table = [] {
    std::vector<QuadratureRule> t;
    for (int q = 0; q <= kMaxTriangleOrder; ++q) t.push_back(make_triangle_rule(std::max(q, 1)));
    return t;
  }();
  return table[order];
}

const EdgeRule& edge_quadrature_rule(int order) {
  if (order < 1 || order > kMaxEdgeOrder) {
    throw std::invalid_argument("edge_quadrature_rule: unsupported order " + std::to_string(order));
  }
  static const std::vector<EdgeRule> table = [] {
    std::vector<EdgeRule> t;
    for (int q = 0; q <= kMaxEdgeOrder; ++q) t.push_back(make_edge_rule(std::max(q, 1)));
    return t;
  }();
  return table[order];
}

PhysicalQuadrature map_to_triangle(const QuadratureRule& rule, const std::array<Point, 3>& c) {
  const Point e1 = c[1] - c[0];
  const Point e2 = c[2] - c[0];
  const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  PhysicalQuadrature q;
  q.points.reserve(rule.points.size());
  q.weights.reserve(rule.points.size());
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    q.points.push_back(c[0] + rule.points[i].x() * e1 + rule.points[i].y() * e2);
    q.weights.push_back(rule.weights[i] * jac);
  }
  return q;
}

PhysicalQuadrature map_to_segment(const EdgeRule& rule, const Point& a, const Point& b) {
  const double len = (b - a).norm();
  PhysicalQuadrature q;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    q.points.push_back(a + rule.points[i] * (b - a));
    q.weights.push_back(rule.weights[i] * len);
  }
  return q;
}

PhysicalQuadrature element_quadrature(const Mesh& mesh, int element, int order) {
  return map_to_triangle(quadrature_rule(order), mesh.corners(element));
}

Eigen::VectorXd BubbleBasis::values(const Point& x) const {
  return coefficients.transpose() * ScaledMonomialBasis(degree, center, scale).values(x);
}

BubbleBasis bubble_basis(const ElementGeometry& g, int p) {
  if (p < 0) throw std::invalid_argument("bubble_basis: negative degree");
  BubbleBasis bb;
  bb.degree = p;
  bb.center = g.incenter;
  bb.radius = g.inradius;
  bb.scale = g.diameter;
  const int q = p - 2;
  bb.coefficients = Eigen::MatrixXd::Zero(dim_poly(p), dim_poly(q));
  const double h2 = g.diameter * g.diameter;
  const double r2 = g.inradius * g.inradius;
  // (h^2 (xh^2 + yh^2) - r^2) m_{a,b}
  for (int d = 0; d <= q; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      const int col = ScaledMonomialBasis::index(a, b);
      bb.coefficients(ScaledMonomialBasis::index(a + 2, b), col) += h2;
      bb.coefficients(ScaledMonomialBasis::index(a, b + 2), col) += h2;
      bb.coefficients(ScaledMonomialBasis::index(a, b), col) -= r2;
    }
  }
  return bb;
}

ElementBasis::ElementBasis(const Mesh& mesh, int element, int degree, BasisKind kind)
    : monomials_(mesh.geometry(element), degree), kind_(kind) {
  const int n = monomials_.size();
  transform_ = Eigen::MatrixXd::Identity(n, n);
  if (kind_ == BasisKind::monomial || degree == 0) {
    if (kind_ == BasisKind::orthonormal) {
      transform_(0, 0) = 1.0 / std::sqrt(mesh.geometry(element).area);
    }
    return;
  }
  const auto quad = element_quadrature(mesh, element, std::min(2 * degree + 2, 30));
  const int nq = static_cast<int>(quad.points.size());
  Eigen::MatrixXd samples(nq, n);
  for (int q = 0; q < nq; ++q) {
    samples.row(q) = std::sqrt(quad.weights[q]) * monomials_.values(quad.points[q]).transpose();
  }
  // Two passes of Householder QR: phi = m R^{-1}, i.e. transform = R^{-T}.
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::MatrixXd current = samples * transform_.transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(current);
    Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      if (r(i, i) < 0.0) r.row(i) *= -1.0;
    }
    const Eigen::MatrixXd rinv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));
    transform_ = rinv.transpose() * transform_;
  }
}

BasisEval ElementBasis::eval(const Point& x) const {
  BasisEval m = monomials_.eval(x);
  if (kind_ == BasisKind::monomial) return m;
  BasisEval e;
  e.values = transform_ * m.values;
  e.gradients = transform_ * m.gradients;
  e.laplacians = transform_ * m.laplacians;
  return e;
}

Eigen::VectorXd ElementBasis::values(const Point& x) const {
  if (kind_ == BasisKind::monomial) return monomials_.values(x);
  return transform_ * monomials_.values(x);
}

Eigen::MatrixXd mass_matrix(const Mesh& mesh, int element, const ElementBasis& basis) {
  const auto quad = element_quadrature(mesh, element, std::min(2 * basis.degree() + 2, 30));
  const int n = basis.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const Eigen::VectorXd v = basis.values(quad.points[q]);
    m.noalias() += quad.weights[q] * v * v.transpose();
  }
  return m;
}

}  // namespace etdg
