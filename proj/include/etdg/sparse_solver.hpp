#pragma once

#include <stdexcept>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "etdg/dg_assembly.hpp"

namespace etdg {

/// Raised when a global system is singular to working precision. Carries the reciprocal
/// condition estimate of the factorization.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double rcond) : std::runtime_error(what), rcond_(rcond) {}
  [[nodiscard]] double rcond() const { return rcond_; }

 private:
  double rcond_;
};

/// Reciprocal condition estimates below this are treated as singular.
inline constexpr double kSingularRcond = 1e-13;

/// Complex sparse LU (UMFPACK). Non-copyable; owns the numeric factorization.
class ComplexSparseLU {
 public:
  ComplexSparseLU() = default;
  explicit ComplexSparseLU(const SparseMatrixC& a) { factorize(a); }
  ~ComplexSparseLU();
  ComplexSparseLU(const ComplexSparseLU&) = delete;
  ComplexSparseLU& operator=(const ComplexSparseLU&) = delete;

  /// Throws SolverError if the matrix is singular or rcond < kSingularRcond.
  void factorize(const SparseMatrixC& a);
  [[nodiscard]] Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;
  /// Ratio of smallest to largest pivot magnitude reported by UMFPACK.
  [[nodiscard]] double rcond() const { return rcond_; }

 private:
  void release();

  SparseMatrixC matrix_;
  std::vector<std::int64_t> colptr_;
  std::vector<std::int64_t> rowind_;
  void* numeric_ = nullptr;
  double rcond_ = 0.0;
};

/// Factorize, solve, and apply one step of iterative refinement.
Eigen::VectorXcd solve_direct(const SparseMatrixC& a, const Eigen::VectorXcd& b,
                              double* rcond = nullptr);

}  // namespace etdg
