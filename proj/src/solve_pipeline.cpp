#include "etdg/solve_pipeline.hpp"

#include <iostream>
#include <stdexcept>
#include <string>

namespace etdg {

std::string_view method_tag(Method m) {
  return m == Method::embedded_trefftz ? "etvol" : "dgvol";
}

Method parse_method(std::string_view tag) {
  if (tag == "etvol" || tag == "embedded") return Method::embedded_trefftz;
  if (tag == "dgvol" || tag == "standard") return Method::standard_dg;
  throw std::invalid_argument("unknown method '" + std::string(tag) + "'");
}

GlobalEmbedding build_global_embedding(const BrokenSpace& space,
                                       const std::vector<LocalTrefftzData>& local) {
  const int ne = space.mesh().num_elements();
  if (static_cast<int>(local.size()) != ne) {
    throw std::invalid_argument("build_global_embedding: need local data for every element");
  }
  GlobalEmbedding e;
  e.column_offsets.resize(ne + 1, 0);
  for (int k = 0; k < ne; ++k) e.column_offsets[k + 1] = e.column_offsets[k] + local[k].kernel_dim();

  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k < ne; ++k) {
    const Eigen::MatrixXd& ek = local[k].kernel;
    const int row0 = space.dofs().offset(k);
    for (int j = 0; j < ek.cols(); ++j) {
      for (int i = 0; i < ek.rows(); ++i) {
        triplets.emplace_back(row0 + i, e.column_offsets[k] + j, ek(i, j));
      }
    }
  }
  e.matrix.resize(space.size(), e.cols());
  e.matrix.setFromTriplets(triplets.begin(), triplets.end());
  e.matrix.makeCompressed();
  return e;
}

LocalTrefftzSet prepare_local_trefftz(const BrokenSpace& space, const Wavenumber& omega,
                                      const ScalarField& f, const SolveOptions& options) {
  const Mesh& mesh = space.mesh();
  const int p = space.degree();
  const int ne = mesh.num_elements();
  LocalTrefftzSet set;
  set.local.resize(ne);
  set.rhs.resize(ne);
  set.particular = Eigen::VectorXcd::Zero(space.size());
  std::vector<double> residuals(ne, 0.0);
  for_each_index(ne, options.policy, [&](int k) {
    const ElementBasis test = constraint_test_basis(mesh, k, p, options.constraint_test_basis);
    set.local[k] = trefftz_kernel(assemble_constraint_matrix(mesh, k, space.basis(k), test, omega), p);
    if (f) {
      set.rhs[k] = local_rhs(mesh, k, test, f);
    } else {
      set.rhs[k].moments = Eigen::VectorXcd::Zero(test.size());
    }
    const ParticularSolution ps = particular_solution(set.local[k], set.rhs[k]);
    set.particular.segment(space.dofs().offset(k), space.block_size()) = ps.coefficients;
    residuals[k] = ps.residual / (1.0 + set.rhs[k].moments.norm());
  });
  for (int k = 0; k < ne; ++k) {
    set.max_particular_residual = std::max(set.max_particular_residual, residuals[k]);
    if (set.local[k].unexpected_kernel_dim) ++set.unexpected_kernel_dims;
  }
  return set;
}

SolutionField solve_reduced(std::shared_ptr<const BrokenSpace> space, const GlobalSystem& system,
                            const GlobalEmbedding& embedding, const Eigen::VectorXcd& particular) {
  const SparseMatrixC e = embedding.matrix.cast<Complex>();
  const SparseMatrixC et = e.transpose();
  const SparseMatrixC reduced = (et * (system.matrix * e)).pruned();
  const Eigen::VectorXcd reduced_rhs = et * (system.rhs - system.matrix * particular);

  SolutionField out;
  out.method = Method::embedded_trefftz;
  out.dofs = static_cast<int>(reduced.rows());
  const Eigen::VectorXcd y = solve_direct(reduced, reduced_rhs, &out.rcond);
  out.residual = residual(reduced, reduced_rhs, y);
  out.coefficients = e * y + particular;
  out.space = std::move(space);
  return out;
}

SolutionField solve_standard_dg(std::shared_ptr<const BrokenSpace> space,
                                const FormParameters& params, const ScalarField& f,
                                const BoundaryField& g, const SolveOptions& options) {
  if (space->degree() < 1) throw std::invalid_argument("solve_standard_dg: degree must be >= 1");
  const GlobalSystem system = assemble_system(*space, params, f, g, options.policy);
  SolutionField out;
  out.method = Method::standard_dg;
  out.dofs = space->size();
  out.coefficients = solve_direct(system.matrix, system.rhs, &out.rcond);
  out.residual = residual(system.matrix, system.rhs, out.coefficients);
  out.space = std::move(space);
  return out;
}

SolutionField solve_embedded_trefftz(std::shared_ptr<const BrokenSpace> space,
                                     const FormParameters& params, const ScalarField& f,
                                     const BoundaryField& g, const SolveOptions& options) {
  if (space->degree() < 2) {
    SolutionField out = solve_standard_dg(std::move(space), params, f, g, options);
    out.method = Method::embedded_trefftz;
    return out;
  }
  const LocalTrefftzSet set = prepare_local_trefftz(*space, params.omega, f, options);
  if (set.unexpected_kernel_dims > 0) {
    std::clog << "warning: " << set.unexpected_kernel_dims << " element(s) with Trefftz kernel "
              << "dimension != 2p+1 = " << 2 * space->degree() + 1 << '\n';
  }
  const GlobalEmbedding embedding = build_global_embedding(*space, set.local);
  const GlobalSystem system = assemble_system(*space, params, f, g, options.policy);
  SolutionField out = solve_reduced(std::move(space), system, embedding, set.particular);
  out.unexpected_kernel_dims = set.unexpected_kernel_dims;
  return out;
}

SolutionField solve(Method method, std::shared_ptr<const BrokenSpace> space,
                    const FormParameters& params, const ScalarField& f, const BoundaryField& g,
                    const SolveOptions& options) {
  return method == Method::embedded_trefftz
             ? solve_embedded_trefftz(std::move(space), params, f, g, options)
             : solve_standard_dg(std::move(space), params, f, g, options);
}

long long trefftz_dof_count(int num_elements, int p) {
  if (p < 0) throw std::invalid_argument("trefftz_dof_count: negative degree");
  return p < 2 ? standard_dof_count(num_elements, p) : static_cast<long long>(num_elements) * (2 * p + 1);
}

long long standard_dof_count(int num_elements, int p) {
  return static_cast<long long>(num_elements) * dim_poly(p);
}

long long dof_count(Method method, int num_elements, int p) {
  return method == Method::embedded_trefftz ? trefftz_dof_count(num_elements, p)
                                            : standard_dof_count(num_elements, p);
}

long long trefftz_dof_count(const std::vector<LocalTrefftzData>& local) {
  long long total = 0;
  for (const auto& d : local) total += d.kernel_dim();
  return total;
}

}  // namespace etdg
