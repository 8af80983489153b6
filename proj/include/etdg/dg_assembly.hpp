#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "etdg/fields.hpp"
#include "etdg/space.hpp"

namespace etdg {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;
using SparseMatrixD = Eigen::SparseMatrix<double>;

/// Parameters of the SIPDG form. The degree is taken from the space.
struct FormParameters {
  Wavenumber omega{1.0};
  double alpha = 10.0;
};

struct GlobalSystem {
  SparseMatrixC matrix;
  Eigen::VectorXcd rhs;
};

struct AverageJump {
  Complex average;
  Complex jump;
};

/// {v} = (v+ + v-)/2 and [v] = v+ - v-.
constexpr AverageJump average_jump(Complex plus, Complex minus) {
  return {0.5 * (plus + minus), plus - minus};
}

/// Face-local mesh size for the penalty and jump terms: mean of the two element diameters.
double face_size(const Mesh& mesh, const InteriorFace& face);

/// A(i, j) = a_h(phi_j, phi_i):
///   (grad u, grad v) - omega^2 (u, v) + i omega <u, v>_boundary
///   - <{grad u . n}, [v]> - <[u], {grad v . n}> + alpha p^2 / h_F <[u], [v]>.
SparseMatrixC assemble_sipdg(const BrokenSpace& space, const FormParameters& params,
                             ExecutionPolicy policy = ExecutionPolicy::parallel);

/// b(i) = (f, phi_i) + <g, phi_i>_boundary, integrated with the data quadrature order.
Eigen::VectorXcd assemble_rhs(const BrokenSpace& space, const ScalarField& f, const BoundaryField& g,
                              ExecutionPolicy policy = ExecutionPolicy::parallel);

GlobalSystem assemble_system(const BrokenSpace& space, const FormParameters& params,
                             const ScalarField& f, const BoundaryField& g,
                             ExecutionPolicy policy = ExecutionPolicy::parallel);

/// ||A u - b|| / (1 + ||b||).
double residual(const SparseMatrixC& a, const Eigen::VectorXcd& b, const Eigen::VectorXcd& u);

/// Discrete form value a_h(u, v) = conj(v)^T A u.
Complex form_value(const SparseMatrixC& a, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// ||A - A^T|| / ||A|| in the Frobenius norm.
double symmetry_defect(const SparseMatrixC& a);

/// Elementwise L2 projection of a field onto the space (exact for piecewise polynomials of
/// degree <= p).
Eigen::VectorXcd l2_projection(const BrokenSpace& space, const ScalarField& u,
                               ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Value of a coefficient vector at a point inside a given element.
Complex evaluate(const BrokenSpace& space, const Eigen::VectorXcd& coefficients, int element,
                 const Point& x);

}  // namespace etdg
