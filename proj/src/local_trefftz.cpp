#include "etdg/local_trefftz.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace etdg {

ElementBasis constraint_test_basis(const Mesh& mesh, int element, int p, BasisKind kind) {
  if (p < 2) throw std::invalid_argument("constraint_test_basis: degree must be >= 2");
  return ElementBasis(mesh, element, p - 2, kind);
}

Eigen::MatrixXd assemble_constraint_matrix(const Mesh& mesh, int element, const ElementBasis& trial,
                                           const ElementBasis& test, const Wavenumber& omega) {
  const int p = trial.degree();
  if (p < 2) {
    throw std::invalid_argument("assemble_constraint_matrix: degree " + std::to_string(p) +
                                " < 2 has no Trefftz constraint");
  }
  if (test.degree() != p - 2) {
    throw std::invalid_argument("assemble_constraint_matrix: test basis must have degree p-2");
  }
  const auto& g = mesh.geometry(element);
  const int order = omega.is_constant() ? form_quadrature_order(p) : data_quadrature_order(p);
  const auto quad = element_quadrature(mesh, element, order);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(test.size(), trial.size());
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const Point& x = quad.points[q];
    const BasisEval phi = trial.eval(x);
    const Eigen::VectorXd psi = test.values(x);
    const double om = omega(x);
    const Eigen::VectorXd residual = -phi.laplacians - om * om * phi.values;
    w.noalias() += (quad.weights[q] * g.diameter) * psi * residual.transpose();
  }
  return w;
}

LocalTrefftzData trefftz_kernel(Eigen::MatrixXd constraint, int p, double tolerance) {
  LocalTrefftzData d;
  const int n = static_cast<int>(constraint.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullU | Eigen::ComputeFullV);
  d.singular_values = svd.singularValues();
  const double smax = d.singular_values.size() > 0 ? d.singular_values[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < d.singular_values.size(); ++i) {
    if (d.singular_values[i] > tolerance * smax) ++rank;
  }
  d.rank = rank;
  d.sigma_min = rank > 0 ? d.singular_values[rank - 1] : 0.0;
  d.range_left = svd.matrixU().leftCols(rank);
  d.range_right = svd.matrixV().leftCols(rank);
  d.kernel = svd.matrixV().rightCols(n - rank);
  d.constraint = std::move(constraint);
  d.unexpected_kernel_dim = d.kernel_dim() != 2 * p + 1;
  return d;
}

LocalRhs local_rhs(const Mesh& mesh, int element, const ElementBasis& test, const ScalarField& f) {
  const auto& g = mesh.geometry(element);
  const int p = test.degree() + 2;
  const auto quad = element_quadrature(mesh, element, data_quadrature_order(p));
  LocalRhs rhs;
  rhs.moments = Eigen::VectorXcd::Zero(test.size());
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const Complex fx = f(quad.points[q]);
    rhs.moments += (quad.weights[q] * g.diameter * fx) * test.values(quad.points[q]).cast<Complex>();
  }
  return rhs;
}

ParticularSolution particular_solution(const LocalTrefftzData& data, const LocalRhs& rhs) {
  if (rhs.moments.size() != data.constraint.rows()) {
    throw std::invalid_argument("particular_solution: rhs size does not match the constraint");
  }
  ParticularSolution ps;
  const Eigen::VectorXcd projected = data.range_left.transpose().cast<Complex>() * rhs.moments;
  Eigen::VectorXcd scaled = projected;
  for (int i = 0; i < data.rank; ++i) scaled[i] /= data.singular_values[i];
  ps.coefficients = data.range_right.cast<Complex>() * scaled;
  ps.residual = (data.constraint.cast<Complex>() * ps.coefficients - rhs.moments).norm();
  ps.consistent = ps.residual <= 1e-10 * (1.0 + rhs.moments.norm());
  return ps;
}

std::vector<LocalTrefftzData> build_local_trefftz(const BrokenSpace& space, const Wavenumber& omega,
                                                  ExecutionPolicy policy, BasisKind test_kind) {
  const int p = space.degree();
  if (p < 2) throw std::invalid_argument("build_local_trefftz: degree must be >= 2");
  const Mesh& mesh = space.mesh();
  std::vector<LocalTrefftzData> out(mesh.num_elements());
  for_each_index(mesh.num_elements(), policy, [&](int k) {
    const ElementBasis test = constraint_test_basis(mesh, k, p, test_kind);
    out[k] = trefftz_kernel(assemble_constraint_matrix(mesh, k, space.basis(k), test, omega), p);
  });
  return out;
}

}  // namespace etdg
