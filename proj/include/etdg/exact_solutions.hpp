#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "etdg/fields.hpp"

namespace etdg {

using ComplexGradient = Eigen::Vector2cd;

/// Exact solution of -lap u - omega^2 u = f with grad u . n + i omega u = g, together with
/// its data. g is always derived from u and grad u.
struct ManufacturedCase {
  std::string name;
  DomainKind domain = DomainKind::unit_square;
  Wavenumber omega{1.0};
  std::function<Complex(const Point&)> u;
  std::function<ComplexGradient(const Point&)> grad;
  std::function<Complex(const Point&)> f;

  /// Impedance trace grad u . n + i omega u.
  [[nodiscard]] Complex g(const Point& x, const Point& normal) const;
  [[nodiscard]] ScalarField source() const { return f; }
  [[nodiscard]] BoundaryField impedance() const;
};

/// u = H0^(1)(omega |x - x0|), f = 0.
ManufacturedCase hankel_case(double omega = 10.0, const Point& source = Point(-0.25, 0.0));

/// u = exp(i omega (x - y) / sqrt 2) on the unit disk, f = 0.
ManufacturedCase plane_wave_case(double omega);

/// u = sin(pi x) sin(pi y), f = (2 pi^2 - omega^2) u.
ManufacturedCase sinsin_case(double omega = 1.0);

/// omega = 5 + sin x + y^2 and u = exp(i omega x y).
ManufacturedCase var_omega_case();

/// Looks up a case by experiment name (hankel, sinsin, planewave, varomega).
ManufacturedCase case_by_name(const std::string& name, double omega);

}  // namespace etdg
