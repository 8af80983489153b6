#include "etdg/exact_solutions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "etdg/bessel.hpp"

namespace etdg {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
}  // namespace

Complex ManufacturedCase::g(const Point& x, const Point& normal) const {
  const ComplexGradient du = grad(x);
  return du[0] * normal.x() + du[1] * normal.y() + kI * omega(x) * u(x);
}

BoundaryField ManufacturedCase::impedance() const {
  return [self = *this](const Point& x, const Point& n) { return self.g(x, n); };
}

ManufacturedCase hankel_case(double omega, const Point& source) {
  if (source.x() >= 0.0 && source.x() <= 1.0 && source.y() >= 0.0 && source.y() <= 1.0) {
    throw std::invalid_argument("hankel_case: source point must lie outside the unit square");
  }
  ManufacturedCase c;
  c.name = "hankel";
  c.domain = DomainKind::unit_square;
  c.omega = Wavenumber(omega);
  c.u = [omega, source](const Point& x) {
    const double r = (x - source).norm();
    if (r == 0.0) throw std::domain_error("hankel_case: evaluation at the source point");
    return hankel1_0(omega * r);
  };
  c.grad = [omega, source](const Point& x) {
    const Point d = x - source;
    const double r = d.norm();
    if (r == 0.0) throw std::domain_error("hankel_case: evaluation at the source point");
    // d/dr H0(omega r) = -omega H1(omega r)
    const Complex dr = -omega * hankel1_1(omega * r);
    return ComplexGradient(dr * d.x() / r, dr * d.y() / r);
  };
  c.f = [](const Point&) { return Complex(0.0, 0.0); };
  return c;
}

ManufacturedCase plane_wave_case(double omega) {
  ManufacturedCase c;
  c.name = "planewave";
  c.domain = DomainKind::unit_disk;
  c.omega = Wavenumber(omega);
  const Point d = Point(1.0, -1.0) / std::sqrt(2.0);
  c.u = [omega, d](const Point& x) { return std::exp(kI * omega * d.dot(x)); };
  c.grad = [omega, d](const Point& x) {
    const Complex u = std::exp(kI * omega * d.dot(x));
    return ComplexGradient(kI * omega * d.x() * u, kI * omega * d.y() * u);
  };
  c.f = [](const Point&) { return Complex(0.0, 0.0); };
  return c;
}

ManufacturedCase sinsin_case(double omega) {
  ManufacturedCase c;
  c.name = "sinsin";
  c.domain = DomainKind::unit_square;
  c.omega = Wavenumber(omega);
  c.u = [](const Point& x) {
    return Complex(std::sin(kPi * x.x()) * std::sin(kPi * x.y()), 0.0);
  };
  c.grad = [](const Point& x) {
    return ComplexGradient(kPi * std::cos(kPi * x.x()) * std::sin(kPi * x.y()),
                           kPi * std::sin(kPi * x.x()) * std::cos(kPi * x.y()));
  };
  c.f = [omega](const Point& x) {
    return Complex((2.0 * kPi * kPi - omega * omega) * std::sin(kPi * x.x()) * std::sin(kPi * x.y()),
                   0.0);
  };
  return c;
}

ManufacturedCase var_omega_case() {
  auto omega = [](const Point& x) { return 5.0 + std::sin(x.x()) + x.y() * x.y(); };
  ManufacturedCase c;
  c.name = "varomega";
  c.domain = DomainKind::unit_square;
  c.omega = Wavenumber(omega, 5.0, "5+sin(x)+y^2");
  // u = exp(i phi), phi = omega(x, y) x y
  //   phi_x = y (omega + x cos x),  phi_y = x (omega + 2 y^2)
  //   lap phi = y (2 cos x - x sin x) + 6 x y
  //   f = -lap u - omega^2 u = (|grad phi|^2 - i lap phi - omega^2) u
  c.u = [omega](const Point& x) { return std::exp(kI * omega(x) * x.x() * x.y()); };
  c.grad = [omega](const Point& p) {
    const double x = p.x();
    const double y = p.y();
    const double w = omega(p);
    const Complex u = std::exp(kI * w * x * y);
    return ComplexGradient(kI * y * (w + x * std::cos(x)) * u, kI * x * (w + 2.0 * y * y) * u);
  };
  c.f = [omega](const Point& p) {
    const double x = p.x();
    const double y = p.y();
    const double w = omega(p);
    const double px = y * (w + x * std::cos(x));
    const double py = x * (w + 2.0 * y * y);
    const double lap = y * (2.0 * std::cos(x) - x * std::sin(x)) + 6.0 * x * y;
    const Complex u = std::exp(kI * w * x * y);
    return (px * px + py * py - kI * lap - w * w) * u;
  };
  return c;
}

ManufacturedCase case_by_name(const std::string& name, double omega) {
  if (name == "hankel") return hankel_case(omega);
  if (name == "sinsin") return sinsin_case(omega);
  if (name == "planewave") return plane_wave_case(omega);
  if (name == "varomega") return var_omega_case();
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

}  // namespace etdg
