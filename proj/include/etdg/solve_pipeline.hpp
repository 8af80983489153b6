#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "etdg/dg_assembly.hpp"
#include "etdg/local_trefftz.hpp"
#include "etdg/sparse_solver.hpp"

namespace etdg {

enum class Method { embedded_trefftz, standard_dg };

/// CSV tags: "etvol" for the embedded Trefftz method, "dgvol" for standard DG.
std::string_view method_tag(Method m);
Method parse_method(std::string_view tag);

/// Block-diagonal map from stacked local Trefftz coefficients to V_h coefficients.
struct GlobalEmbedding {
  SparseMatrixD matrix;            // size(V_h) x sum_K kernel_dim_K
  std::vector<int> column_offsets;  // per element, plus a final total

  [[nodiscard]] int cols() const { return column_offsets.back(); }
};

GlobalEmbedding build_global_embedding(const BrokenSpace& space,
                                       const std::vector<LocalTrefftzData>& local);

/// Discrete solution in V_h coefficients together with solve diagnostics.
struct SolutionField {
  std::shared_ptr<const BrokenSpace> space;
  Eigen::VectorXcd coefficients;
  Method method = Method::standard_dg;
  int dofs = 0;             // unknowns of the global linear system
  double residual = 0.0;    // relative residual of the solved global system
  double rcond = 0.0;       // reciprocal condition estimate of the factorization
  int unexpected_kernel_dims = 0;

  [[nodiscard]] int degree() const { return space->degree(); }
};

struct SolveOptions {
  ExecutionPolicy policy = ExecutionPolicy::parallel;
  BasisKind constraint_test_basis = BasisKind::orthonormal;
};

/// Per-element Trefftz data and the particular solution u_{h,f} = W_K^+ l_K.
struct LocalTrefftzSet {
  std::vector<LocalTrefftzData> local;
  Eigen::VectorXcd particular;
  std::vector<LocalRhs> rhs;
  double max_particular_residual = 0.0;
  int unexpected_kernel_dims = 0;
};

LocalTrefftzSet prepare_local_trefftz(const BrokenSpace& space, const Wavenumber& omega,
                                      const ScalarField& f, const SolveOptions& options = {});

/// Solves a_h(u0, v) = l_h(v) - a_h(u_f, v) for u0 in the embedded Trefftz space and returns
/// u_h = u0 + u_f.
SolutionField solve_reduced(std::shared_ptr<const BrokenSpace> space, const GlobalSystem& system,
                            const GlobalEmbedding& embedding, const Eigen::VectorXcd& particular);

/// Embedded Trefftz DG solve. For p < 2 the Trefftz space is all of V_h and the standard
/// solve is used (the result is still tagged as embedded).
SolutionField solve_embedded_trefftz(std::shared_ptr<const BrokenSpace> space,
                                     const FormParameters& params, const ScalarField& f,
                                     const BoundaryField& g, const SolveOptions& options = {});

SolutionField solve_standard_dg(std::shared_ptr<const BrokenSpace> space,
                                const FormParameters& params, const ScalarField& f,
                                const BoundaryField& g, const SolveOptions& options = {});

SolutionField solve(Method method, std::shared_ptr<const BrokenSpace> space,
                    const FormParameters& params, const ScalarField& f, const BoundaryField& g,
                    const SolveOptions& options = {});

/// Nominal unknown counts: 2p+1 (embedded, p >= 2) or (p+1)(p+2)/2 per element.
long long trefftz_dof_count(int num_elements, int p);
long long standard_dof_count(int num_elements, int p);
long long dof_count(Method method, int num_elements, int p);
/// Actual embedded count, sum of the computed kernel dimensions.
long long trefftz_dof_count(const std::vector<LocalTrefftzData>& local);

}  // namespace etdg
