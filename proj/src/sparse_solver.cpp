#include "etdg/sparse_solver.hpp"

#include <sstream>
#include <vector>

#include <suitesparse/umfpack.h>

namespace etdg {

namespace {

std::string describe(long status, double rcond) {
  std::ostringstream os;
  if (status == UMFPACK_OK || status == UMFPACK_WARNING_singular_matrix) {
    os << "sparse LU: the system is singular to working precision (rcond estimate " << rcond
       << "); the mesh likely violates the resolution condition (1 + omega^2) h <= C";
  } else if (status == UMFPACK_ERROR_out_of_memory) {
    os << "sparse LU: out of memory during factorization; lower --dof-cap";
  } else {
    os << "sparse LU failed with UMFPACK status " << status;
  }
  return os.str();
}

}  // namespace

ComplexSparseLU::~ComplexSparseLU() { release(); }

void ComplexSparseLU::release() {
  if (numeric_ != nullptr) {
    umfpack_zl_free_numeric(&numeric_);
    numeric_ = nullptr;
  }
}

void ComplexSparseLU::factorize(const SparseMatrixC& a) {
  release();
  if (a.rows() != a.cols()) throw std::invalid_argument("ComplexSparseLU: matrix is not square");
  matrix_ = a;
  matrix_.makeCompressed();
  const auto n = static_cast<SuiteSparse_long>(matrix_.rows());
  colptr_.assign(matrix_.outerIndexPtr(), matrix_.outerIndexPtr() + n + 1);
  rowind_.assign(matrix_.innerIndexPtr(), matrix_.innerIndexPtr() + matrix_.nonZeros());
  const SuiteSparse_long* colptr = colptr_.data();
  const SuiteSparse_long* rowind = rowind_.data();
  // packed complex storage: interleaved (re, im) with Az = nullptr
  const double* values = reinterpret_cast<const double*>(matrix_.valuePtr());

  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  umfpack_zl_defaults(control);
  control[UMFPACK_ORDERING] = UMFPACK_ORDERING_METIS;
  void* symbolic = nullptr;
  long status = umfpack_zl_symbolic(n, n, colptr, rowind, values, nullptr, &symbolic, control, info);
  if (status != UMFPACK_OK) {
    if (symbolic != nullptr) umfpack_zl_free_symbolic(&symbolic);
    throw SolverError(describe(status, 0.0), 0.0);
  }
  status = umfpack_zl_numeric(colptr, rowind, values, nullptr, symbolic, &numeric_, control, info);
  umfpack_zl_free_symbolic(&symbolic);
  rcond_ = info[UMFPACK_RCOND];
  if (status != UMFPACK_OK || !(rcond_ >= kSingularRcond)) {
    release();
    throw SolverError(describe(status, rcond_), rcond_);
  }
}

Eigen::VectorXcd ComplexSparseLU::solve(const Eigen::VectorXcd& b) const {
  if (numeric_ == nullptr) throw std::logic_error("ComplexSparseLU: solve before factorize");
  if (b.size() != matrix_.rows()) throw std::invalid_argument("ComplexSparseLU: size mismatch");
  Eigen::VectorXcd x(b.size());
  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  umfpack_zl_defaults(control);
  control[UMFPACK_IRSTEP] = 0;
  const long status = umfpack_zl_solve(
      UMFPACK_A, colptr_.data(), rowind_.data(),
      reinterpret_cast<const double*>(matrix_.valuePtr()), nullptr,
      reinterpret_cast<double*>(x.data()), nullptr, reinterpret_cast<const double*>(b.data()),
      nullptr, numeric_, control, info);
  if (status != UMFPACK_OK) throw SolverError(describe(status, rcond_), rcond_);
  return x;
}

Eigen::VectorXcd solve_direct(const SparseMatrixC& a, const Eigen::VectorXcd& b, double* rcond) {
  const ComplexSparseLU lu(a);
  if (rcond != nullptr) *rcond = lu.rcond();
  Eigen::VectorXcd x = lu.solve(b);
  const Eigen::VectorXcd r = b - a * x;
  x += lu.solve(r);
  return x;
}

}  // namespace etdg
