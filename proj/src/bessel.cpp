#include "etdg/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace etdg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kSeriesLimit = 6.0;
constexpr double kAsymptoticLimit = 25.0;

BesselValues series(double x) {
  const double t = 0.25 * x * x;
  const double log_term = std::log(0.5 * x) + kEulerGamma;

  // J0 and the Y0 tail: sum (-1)^k t^k / (k!)^2 and sum (-1)^{k+1} H_k t^k / (k!)^2
  double j0 = 0.0;
  double y0_tail = 0.0;
  // J1 and the Y1 tail: (x/2) sum (-1)^k t^k / (k!(k+1)!) and
  // (x/2) sum (-1)^k (psi(k+1) + psi(k+2)) t^k / (k!(k+1)!)
  double j1 = 0.0;
  double y1_tail = 0.0;

  double a = 1.0;  // (-1)^k t^k / (k!)^2
  double b = 1.0;  // (-1)^k t^k / (k!(k+1)!)
  double harmonic = 0.0;  // H_k
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      a *= -t / (static_cast<double>(k) * k);
      b *= -t / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    j0 += a;
    y0_tail -= harmonic * a;
    j1 += b;
    const double psi_sum = 2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kEulerGamma;
    y1_tail += psi_sum * b;
    if (k > 2 && std::abs(a) < 1e-18 && std::abs(b) < 1e-18) break;
  }
  j1 *= 0.5 * x;
  y1_tail *= 0.5 * x;

  BesselValues v{};
  v.j0 = j0;
  v.j1 = j1;
  v.y0 = (2.0 / kPi) * (log_term * j0 + y0_tail);
  v.y1 = -2.0 / (kPi * x) + (2.0 / kPi) * std::log(0.5 * x) * j1 - y1_tail / kPi;
  return v;
}

BesselValues miller_neumann(double x) {
  // Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalised by
  // J_0 + 2 sum J_{2k} = 1.
  const int top = 2 * (static_cast<int>(x / 2.0) + 25);
  std::vector<double> j(top + 2, 0.0);
  j[top + 1] = 0.0;
  j[top] = 1e-30;
  for (int k = top; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= top + 1; ++i) j[i] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= top; k += 2) norm += 2.0 * j[k];
  for (double& v : j) v /= norm;

  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;  // sum (-1)^k J_{2k} / k
  double s1 = 0.0;  // sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / k;
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  BesselValues v{};
  v.j0 = j[0];
  v.j1 = j[1];
  v.y0 = (2.0 / kPi) * (log_term * j[0] - 2.0 * s0);
  v.y1 = (2.0 / kPi) * (-j[0] / x + log_term * j[1] + s1);
  return v;
}

// P and Q of the Hankel expansion for order nu.
void hankel_pq(int nu, double x, double& p, double& q) {
  const double mu = 4.0 * nu * nu;
  p = 1.0;
  q = 0.0;
  double term = 1.0;  // a_k(nu) / x^k
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last || mag < 1e-17) break;
    last = mag;
    // k odd contributes to Q with sign (-1)^{(k-1)/2}, k even to P with (-1)^{k/2}
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
  }
}

BesselValues asymptotic(double x) {
  const double scale = std::sqrt(2.0 / (kPi * x));
  BesselValues v{};
  double p = 0.0;
  double q = 0.0;
  hankel_pq(0, x, p, q);
  double chi = x - 0.25 * kPi;
  v.j0 = scale * (p * std::cos(chi) - q * std::sin(chi));
  v.y0 = scale * (p * std::sin(chi) + q * std::cos(chi));
  hankel_pq(1, x, p, q);
  chi = x - 0.75 * kPi;
  v.j1 = scale * (p * std::cos(chi) - q * std::sin(chi));
  v.y1 = scale * (p * std::sin(chi) + q * std::cos(chi));
  return v;
}

}  // namespace

BesselValues bessel01(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel01: argument must be positive");
  if (x < kSeriesLimit) return series(x);
  if (x < kAsymptoticLimit) return miller_neumann(x);
  return asymptotic(x);
}

BesselPair bessel_j0_y0(double x) {
  const BesselValues v = bessel01(x);
  return {v.j0, v.y0};
}

BesselPair bessel_j1_y1(double x) {
  const BesselValues v = bessel01(x);
  return {v.j1, v.y1};
}

std::complex<double> hankel1_0(double x) {
  const BesselValues v = bessel01(x);
  return {v.j0, v.y0};
}

std::complex<double> hankel1_1(double x) {
  const BesselValues v = bessel01(x);
  return {v.j1, v.y1};
}

}  // namespace etdg
