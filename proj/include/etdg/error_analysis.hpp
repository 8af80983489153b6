#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "etdg/exact_solutions.hpp"
#include "etdg/solve_pipeline.hpp"

namespace etdg {

/// One row of an experiment table.
struct ErrorReport {
  std::string method;  // etvol | dgvol
  int p = 0;
  double h = 0.0;
  int hnr = 0;
  long long dofs = 0;
  double l2error = 0.0;
  double dgerror = 0.0;
  std::string omega;  // numeric value, or a label for variable wavenumbers
  double dofspwl = 0.0;
  std::string failure;  // empty on success
};

/// Numerical estimate of one of the analysis constants.
struct ConstantEstimate {
  std::string name;  // sigma_min_local | c_star | inverse_trace
  double value = 0.0;
  int p = 0;
  double omega = 0.0;
  double h = 0.0;
};

/// (sum_K ||u_h - u||_K^2)^{1/2}; the quadrature order is 2p+6 plus `quadrature_bump`.
double l2_error(const BrokenSpace& space, const Eigen::VectorXcd& coefficients,
                const ManufacturedCase& exact, int quadrature_bump = 0,
                ExecutionPolicy policy = ExecutionPolicy::parallel);
double l2_error(const SolutionField& solution, const ManufacturedCase& exact, int quadrature_bump = 0);

/// Broken energy norm of e = u_h - u:
///   ||grad e||^2 + omega^2 ||e||^2 + p^2/h_F ||[u_h]||^2_interior + omega ||e||^2_boundary.
/// Pass an empty `exact.u` to measure u_h itself.
double dg_error(const BrokenSpace& space, const Eigen::VectorXcd& coefficients,
                const ManufacturedCase& exact, int quadrature_bump = 0,
                ExecutionPolicy policy = ExecutionPolicy::parallel);
double dg_error(const SolutionField& solution, const ManufacturedCase& exact, int quadrature_bump = 0);

/// rate_i = log(e_{i-1}/e_i) / log(h_{i-1}/h_i).
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

/// N_lambda = 2 pi DOF^{1/d} / (omega |Omega|^{1/d}).
double dofs_per_wavelength(double dofs, double omega, double domain_area, int dim = 2);

/// Smallest generalized singular value of the constraint operator restricted to the bubble
/// space, from the dual Q_h(K) norm to the element-local energy norm
/// ||grad u||^2 + omega^2 ||u||^2 + p^2/h_K ||u||^2_{dK}.
ConstantEstimate estimate_local_coercivity(const Mesh& mesh, int element, int p, double omega);

/// sqrt of the largest generalized eigenvalue of the sharp-norm Gram matrix against the
/// energy-norm Gram matrix over V_h. Dense; meshes are limited to 32 elements.
ConstantEstimate estimate_norm_equivalence(const Mesh& mesh, int p, double omega = 1.0);

/// max over P^p(K) of ||u||_{dK} h_K^{1/2} / (p ||u||_K).
ConstantEstimate estimate_inverse_trace(const Mesh& mesh, int element, int p);

}  // namespace etdg
