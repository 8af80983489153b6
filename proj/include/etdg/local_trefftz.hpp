#pragma once

#include <vector>

#include <Eigen/Core>

#include "etdg/fields.hpp"
#include "etdg/space.hpp"

namespace etdg {

/// Relative singular-value cutoff used to decide the numerical rank of W.
inline constexpr double kRankTolerance = 1e-10;

/// Weak Trefftz constraint of one element and its SVD.
///
/// `constraint` is W with W(q, j) = h_K (-lap phi_j - omega^2 phi_j, q_q)_K, phi_j the
/// P^p(K) trial basis and q_q the P^{p-2}(K) test basis. `kernel` holds an orthonormal
/// basis of ker W (the local Trefftz space); the remaining factors apply W^+.
struct LocalTrefftzData {
  Eigen::MatrixXd constraint;
  Eigen::MatrixXd kernel;
  Eigen::MatrixXd range_left;   // U_r, m x rank
  Eigen::MatrixXd range_right;  // V_r, n x rank
  Eigen::VectorXd singular_values;  // all of them, descending
  int rank = 0;
  double sigma_min = 0.0;  // smallest singular value above the cutoff
  bool unexpected_kernel_dim = false;

  [[nodiscard]] int kernel_dim() const { return static_cast<int>(kernel.cols()); }
};

/// Moments l_K(q) = h_K (f, q)_K over the P^{p-2}(K) test basis.
struct LocalRhs {
  Eigen::VectorXcd moments;
};

struct ParticularSolution {
  Eigen::VectorXcd coefficients;
  double residual = 0.0;  // ||W u - rhs||
  bool consistent = true;  // residual <= 1e-10 (1 + ||rhs||)
};

/// Test basis of Q_h(K) = P^{p-2}(K) on an element.
ElementBasis constraint_test_basis(const Mesh& mesh, int element, int p, BasisKind kind);

/// Assembles W for the given trial (degree p >= 2) and test (degree p-2) bases. A variable
/// wavenumber is sampled at the quadrature points.
Eigen::MatrixXd assemble_constraint_matrix(const Mesh& mesh, int element, const ElementBasis& trial,
                                           const ElementBasis& test, const Wavenumber& omega);

/// Kernel and pseudo-inverse factors of W. Rank counts singular values above
/// tolerance * sigma_max. Flags the result when the kernel dimension differs from 2p+1.
LocalTrefftzData trefftz_kernel(Eigen::MatrixXd constraint, int p,
                                double tolerance = kRankTolerance);

LocalRhs local_rhs(const Mesh& mesh, int element, const ElementBasis& test, const ScalarField& f);

/// Minimum-norm solution W^+ rhs.
ParticularSolution particular_solution(const LocalTrefftzData& data, const LocalRhs& rhs);

/// Local Trefftz data for every element of a space. Requires degree >= 2.
std::vector<LocalTrefftzData> build_local_trefftz(const BrokenSpace& space, const Wavenumber& omega,
                                                  ExecutionPolicy policy = ExecutionPolicy::parallel,
                                                  BasisKind test_kind = BasisKind::orthonormal);

}  // namespace etdg
