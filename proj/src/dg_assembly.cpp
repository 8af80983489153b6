#include "etdg/dg_assembly.hpp"

#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

namespace etdg {

namespace {

using Triplet = Eigen::Triplet<Complex>;

constexpr Complex kI{0.0, 1.0};

struct FaceBlocks {
  // blocks[r][c]: rows from side r, columns from side c (0 = plus, 1 = minus)
  Eigen::MatrixXd blocks[2][2];
};

Eigen::MatrixXcd element_block(const BrokenSpace& space, const FormParameters& params, int k) {
  const Mesh& mesh = space.mesh();
  const ElementBasis& basis = space.basis(k);
  const int p = space.degree();
  const int n = basis.size();
  const bool variable = !params.omega.is_constant();
  const int order = variable ? data_quadrature_order(p) : form_quadrature_order(p);

  Eigen::MatrixXd real_part = Eigen::MatrixXd::Zero(n, n);
  const auto quad = element_quadrature(mesh, k, order);
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const BasisEval e = basis.eval(quad.points[q]);
    const double om = params.omega(quad.points[q]);
    const double w = quad.weights[q];
    real_part.noalias() += w * e.gradients * e.gradients.transpose();
    real_part.noalias() -= (w * om * om) * e.values * e.values.transpose();
  }

  Eigen::MatrixXd boundary = Eigen::MatrixXd::Zero(n, n);
  for (int fi : mesh.element_boundary_faces()[k]) {
    const auto& f = mesh.boundary_faces()[fi];
    const auto fq = map_to_segment(edge_quadrature_rule(order), mesh.vertices()[f.endpoints[0]],
                                   mesh.vertices()[f.endpoints[1]]);
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
      const Eigen::VectorXd v = basis.values(fq.points[q]);
      boundary.noalias() += (fq.weights[q] * params.omega(fq.points[q])) * v * v.transpose();
    }
  }
  return real_part.cast<Complex>() + kI * boundary.cast<Complex>();
}

FaceBlocks face_blocks(const BrokenSpace& space, const FormParameters& params, int fi) {
  const Mesh& mesh = space.mesh();
  const auto& f = mesh.interior_faces()[fi];
  const int p = space.degree();
  const int n = space.block_size();
  const double penalty = params.alpha * p * p / face_size(mesh, f);
  const ElementBasis* basis[2] = {&space.basis(f.plus_element), &space.basis(f.minus_element)};
  constexpr double sign[2] = {1.0, -1.0};

  FaceBlocks out;
  for (auto& row : out.blocks) {
    for (auto& b : row) b = Eigen::MatrixXd::Zero(n, n);
  }
  const auto fq = map_to_segment(edge_quadrature_rule(form_quadrature_order(p)),
                                 mesh.vertices()[f.endpoints[0]], mesh.vertices()[f.endpoints[1]]);
  for (std::size_t q = 0; q < fq.points.size(); ++q) {
    Eigen::VectorXd val[2];
    Eigen::VectorXd dn[2];
    for (int s = 0; s < 2; ++s) {
      const BasisEval e = basis[s]->eval(fq.points[q]);
      val[s] = e.values;
      dn[s] = e.gradients * f.unit_normal;
    }
    const double w = fq.weights[q];
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        // -{grad u . n}[v] - [u]{grad v . n} + penalty [u][v], u = phi_c, v = phi_r
        out.blocks[r][c].noalias() +=
            w * (-0.5 * sign[r] * val[r] * dn[c].transpose() -
                 0.5 * sign[c] * dn[r] * val[c].transpose() +
                 penalty * sign[r] * sign[c] * val[r] * val[c].transpose());
      }
    }
  }
  return out;
}

void push_block(std::vector<Triplet>& triplets, int row0, int col0, const Eigen::MatrixXcd& b) {
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < b.rows(); ++i) triplets.emplace_back(row0 + i, col0 + j, b(i, j));
  }
}

}  // namespace

double face_size(const Mesh& mesh, const InteriorFace& face) {
  return 0.5 * (mesh.geometry(face.plus_element).diameter +
                mesh.geometry(face.minus_element).diameter);
}

SparseMatrixC assemble_sipdg(const BrokenSpace& space, const FormParameters& params,
                             ExecutionPolicy policy) {
  if (!(params.alpha > 0.0)) throw std::invalid_argument("assemble_sipdg: alpha must be positive");
  const Mesh& mesh = space.mesh();
  const int ne = mesh.num_elements();
  const int nf = static_cast<int>(mesh.interior_faces().size());

  std::vector<Eigen::MatrixXcd> elements(ne);
  std::vector<FaceBlocks> faces(nf);
  for_each_index(ne, policy, [&](int k) { elements[k] = element_block(space, params, k); });
  for_each_index(nf, policy, [&](int fi) { faces[fi] = face_blocks(space, params, fi); });

  // serial merge in fixed order
  const int n = space.block_size();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * n * (ne + 4 * nf));
  for (int k = 0; k < ne; ++k) {
    push_block(triplets, space.dofs().offset(k), space.dofs().offset(k), elements[k]);
  }
  for (int fi = 0; fi < nf; ++fi) {
    const auto& f = mesh.interior_faces()[fi];
    const int off[2] = {space.dofs().offset(f.plus_element), space.dofs().offset(f.minus_element)};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        push_block(triplets, off[r], off[c], faces[fi].blocks[r][c].cast<Complex>());
      }
    }
  }
  SparseMatrixC a(space.size(), space.size());
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

Eigen::VectorXcd assemble_rhs(const BrokenSpace& space, const ScalarField& f, const BoundaryField& g,
                              ExecutionPolicy policy) {
  const Mesh& mesh = space.mesh();
  const int order = data_quadrature_order(space.degree());
  const int n = space.block_size();
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(space.size());
  for_each_index(mesh.num_elements(), policy, [&](int k) {
    const ElementBasis& basis = space.basis(k);
    Eigen::VectorXcd local = Eigen::VectorXcd::Zero(n);
    if (f) {
      const auto quad = element_quadrature(mesh, k, order);
      for (std::size_t q = 0; q < quad.points.size(); ++q) {
        local += (quad.weights[q] * f(quad.points[q])) * basis.values(quad.points[q]).cast<Complex>();
      }
    }
    if (g) {
      for (int fi : mesh.element_boundary_faces()[k]) {
        const auto& face = mesh.boundary_faces()[fi];
        const auto fq = map_to_segment(edge_quadrature_rule(order),
                                       mesh.vertices()[face.endpoints[0]],
                                       mesh.vertices()[face.endpoints[1]]);
        for (std::size_t q = 0; q < fq.points.size(); ++q) {
          local += (fq.weights[q] * g(fq.points[q], face.unit_normal)) *
                   basis.values(fq.points[q]).cast<Complex>();
        }
      }
    }
    b.segment(space.dofs().offset(k), n) = local;
  });
  return b;
}

GlobalSystem assemble_system(const BrokenSpace& space, const FormParameters& params,
                             const ScalarField& f, const BoundaryField& g, ExecutionPolicy policy) {
  return {assemble_sipdg(space, params, policy), assemble_rhs(space, f, g, policy)};
}

double residual(const SparseMatrixC& a, const Eigen::VectorXcd& b, const Eigen::VectorXcd& u) {
  if (a.rows() != b.size() || a.cols() != u.size()) {
    throw std::invalid_argument("residual: shape mismatch");
  }
  return (a * u - b).norm() / (1.0 + b.norm());
}

Complex form_value(const SparseMatrixC& a, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return v.dot(a * u);  // Eigen's dot conjugates its first argument
}

double symmetry_defect(const SparseMatrixC& a) {
  const SparseMatrixC at = a.transpose();
  const double norm = a.norm();
  return norm > 0.0 ? SparseMatrixC(a - at).norm() / norm : 0.0;
}

Eigen::VectorXcd l2_projection(const BrokenSpace& space, const ScalarField& u,
                               ExecutionPolicy policy) {
  const Mesh& mesh = space.mesh();
  const int n = space.block_size();
  Eigen::VectorXcd c(space.size());
  for_each_index(mesh.num_elements(), policy, [&](int k) {
    const ElementBasis& basis = space.basis(k);
    const auto quad = element_quadrature(mesh, k, data_quadrature_order(space.degree()));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const Eigen::VectorXd v = basis.values(quad.points[q]);
      m.noalias() += quad.weights[q] * v * v.transpose();
      rhs += (quad.weights[q] * u(quad.points[q])) * v.cast<Complex>();
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    Eigen::VectorXcd sol(n);
    sol.real() = ldlt.solve(rhs.real());
    sol.imag() = ldlt.solve(rhs.imag());
    c.segment(space.dofs().offset(k), n) = sol;
  });
  return c;
}

Complex evaluate(const BrokenSpace& space, const Eigen::VectorXcd& coefficients, int element,
                 const Point& x) {
  const int n = space.block_size();
  return space.basis(element).values(x).cast<Complex>().dot(
      coefficients.segment(space.dofs().offset(element), n));
}

}  // namespace etdg
