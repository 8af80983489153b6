#pragma once

#include <complex>

namespace etdg {

/// Bessel functions of the first and second kind, orders 0 and 1, for x > 0.
///
/// Power series for x < 6, Miller backward recurrence with Neumann series for Y in
/// [6, 25), Hankel asymptotic expansions beyond. Absolute accuracy is about 1e-13.
struct BesselValues {
  double j0;
  double y0;
  double j1;
  double y1;
};

BesselValues bessel01(double x);

/// Convenience pair (J0, Y0).
struct BesselPair {
  double j;
  double y;
};
BesselPair bessel_j0_y0(double x);
BesselPair bessel_j1_y1(double x);

/// Hankel functions of the first kind, H_n = J_n + i Y_n.
std::complex<double> hankel1_0(double x);
std::complex<double> hankel1_1(double x);

}  // namespace etdg
