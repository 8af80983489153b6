// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "etdg/exact_solutions.hpp"

namespace oracle {

using etdg::Complex;
using etdg::ComplexGradient;
using etdg::Point;

/// a! b! / (a+b+2)!, the integral of x^a y^b over the reference triangle.
inline double simplex_moment(int a, int b) {
  double r = 1.0;
  for (int i = 1; i <= a; ++i) r *= static_cast<double>(i) / (b + i);
  // now r = a! b! / (a+b)!
  return r / ((a + b + 1.0) * (a + b + 2.0));
}

/// Bessel J0, Y0, J1, Y1 from the ascending series, summed in 50-digit arithmetic.
struct BesselRef {
  double j0, y0, j1, y1;
};

inline BesselRef bessel_series(double xd) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  const Real x = xd;
  const Real t = x * x / 4;
  const Real pi = boost::math::constants::pi<Real>();
  const Real gamma = boost::math::constants::euler<Real>();
  const Real eps = Real(1e-45);
  Real j0 = 0, s0 = 0, j1 = 0, s1 = 0;
  Real a = 1;  // (-t)^k / (k!)^2
  Real b = 1;  // (-t)^k / (k! (k+1)!)
  Real hk = 0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      a *= -t / (Real(k) * k);
      b *= -t / (Real(k) * (k + 1));
      hk += Real(1) / k;
    }
    j0 += a;
    s0 += hk * a;
    j1 += b;
    s1 += (2 * hk + Real(1) / (k + 1)) * b;
    if (k > 10 && abs(a) < eps && abs(b) < eps) break;
  }
  j1 *= x / 2;
  s1 *= x / 2;
  const Real l = log(x / 2) + gamma;
  // Y0 = (2/pi) [(ln(x/2) + gamma) J0 - sum (-1)^k H_k t^k/(k!)^2]
  const Real y0 = 2 / pi * (l * j0 - s0);
  // Y1 = -2/(pi x) + (2/pi) ln(x/2) J1 - (1/pi)(x/2) sum (-t)^k (psi(k+1)+psi(k+2)) / (k!(k+1)!)
  const Real y1 = -2 / (pi * x) + 2 / pi * log(x / 2) * j1 - (s1 - 2 * gamma * j1) / pi;
  return {static_cast<double>(j0), static_cast<double>(y0), static_cast<double>(j1),
          static_cast<double>(y1)};
}

/// Central-difference gradient with step h.
inline ComplexGradient fd_gradient(const std::function<Complex(const Point&)>& u, const Point& x,
                                   double h) {
  const Point ex(h, 0.0);
  const Point ey(0.0, h);
  return ComplexGradient((u(x + ex) - u(x - ex)) / (2 * h), (u(x + ey) - u(x - ey)) / (2 * h));
}

/// Five-point Laplacian with step h.
inline Complex fd_laplacian(const std::function<Complex(const Point&)>& u, const Point& x,
                            double h) {
  const Point ex(h, 0.0);
  const Point ey(0.0, h);
  return (u(x + ex) + u(x - ex) + u(x + ey) + u(x - ey) - 4.0 * u(x)) / (h * h);
}

/// Bivariate polynomial sum c_ab x^a y^b with exact derivatives.
struct Polynomial {
  std::map<std::pair<int, int>, double> coefficients;

  [[nodiscard]] double value(const Point& x) const {
    double s = 0.0;
    for (const auto& [ab, c] : coefficients) s += c * std::pow(x.x(), ab.first) * std::pow(x.y(), ab.second);
    return s;
  }
  [[nodiscard]] Point gradient(const Point& x) const {
    Point g = Point::Zero();
    for (const auto& [ab, c] : coefficients) {
      const auto [a, b] = ab;
      if (a > 0) g.x() += c * a * std::pow(x.x(), a - 1) * std::pow(x.y(), b);
      if (b > 0) g.y() += c * b * std::pow(x.x(), a) * std::pow(x.y(), b - 1);
    }
    return g;
  }
  [[nodiscard]] double laplacian(const Point& x) const {
    double s = 0.0;
    for (const auto& [ab, c] : coefficients) {
      const auto [a, b] = ab;
      if (a > 1) s += c * a * (a - 1) * std::pow(x.x(), a - 2) * std::pow(x.y(), b);
      if (b > 1) s += c * b * (b - 1) * std::pow(x.x(), a) * std::pow(x.y(), b - 2);
    }
    return s;
  }
};

/// Deterministic polynomial of total degree p with O(1) coefficients.
inline Polynomial random_polynomial(int p, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Polynomial poly;
  for (int d = 0; d <= p; ++d) {
    for (int b = 0; b <= d; ++b) poly.coefficients[{d - b, b}] = dist(rng);
  }
  return poly;
}

/// Manufactured case with u a polynomial: f = -lap u - omega^2 u, g from the impedance trace.
inline etdg::ManufacturedCase polynomial_case(const Polynomial& poly, double omega) {
  etdg::ManufacturedCase c;
  c.name = "polynomial";
  c.omega = etdg::Wavenumber(omega);
  c.u = [poly](const Point& x) { return Complex(poly.value(x), 0.0); };
  c.grad = [poly](const Point& x) {
    const Point g = poly.gradient(x);
    return ComplexGradient(g.x(), g.y());
  };
  c.f = [poly, omega](const Point& x) {
    return Complex(-poly.laplacian(x) - omega * omega * poly.value(x), 0.0);
  };
  return c;
}

}  // namespace oracle
