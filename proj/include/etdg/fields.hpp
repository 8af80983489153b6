#pragma once

#include <complex>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "etdg/mesh.hpp"

namespace etdg {

using Complex = std::complex<double>;
using ScalarField = std::function<Complex(const Point&)>;
/// Boundary data evaluated at a point with the outward unit normal there.
using BoundaryField = std::function<Complex(const Point&, const Point&)>;

/// Wavenumber, either constant or a positive function of position.
class Wavenumber {
 public:
  explicit Wavenumber(double value) : constant_(value) {
    if (!(value > 0.0)) throw std::invalid_argument("Wavenumber: must be positive");
  }
  Wavenumber(std::function<double(const Point&)> fn, double representative, std::string label)
      : constant_(representative), fn_(std::move(fn)), label_(std::move(label)) {}

  [[nodiscard]] bool is_constant() const { return !fn_; }
  [[nodiscard]] double operator()(const Point& x) const { return fn_ ? fn_(x) : constant_; }
  /// The constant value, or a representative value used only for labelling.
  [[nodiscard]] double representative() const { return constant_; }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  double constant_;
  std::function<double(const Point&)> fn_;
  std::string label_;
};

enum class ExecutionPolicy { serial, parallel };

/// Runs body(i) for i in [0, n). The parallel variant distributes iterations with OpenMP;
/// the first exception thrown by any iteration is rethrown on the calling thread.
template <class Body>
void for_each_index(int n, ExecutionPolicy policy, Body&& body) {
  if (policy == ExecutionPolicy::serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace etdg
