#include <array>
#include <cmath>

#include "jladder/error.hpp"
#include "jladder/specfun.hpp"

namespace jladder {
namespace {

constexpr int kAgmCap = 40;
constexpr double kAgmThreshold = 1e-15;

void check_modulus(double k) {
  const double k2 = k * k;
  if (!(k2 > 0.0 && k2 < 1.0)) {
    throw Error(ErrorKind::ModulusOutOfRange, "elliptic modulus needs k^2 in (0,1)");
  }
}

double agm(double a, double b) {
  for (int i = 0; i < kAgmCap && std::abs(a - b) > kAgmThreshold * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

}  // namespace

double elliptic_k(double k) {
  check_modulus(k);
  return kPi / (2.0 * agm(1.0, std::sqrt(1.0 - k * k)));
}

void jacobi_elliptic_real(double x, double k, double& sn, double& cn, double& dn) {
  check_modulus(k);
  const double quarter = elliptic_k(k);
  // sn, cn have real period 4K; reduce first so 2^N a_N x stays moderate.
  const double period = 4.0 * quarter;
  x -= period * std::round(x / period);

  std::array<double, kAgmCap + 1> a{};
  std::array<double, kAgmCap + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - k * k);
  c[0] = std::abs(k);
  int n = 0;
  while (n < kAgmCap && std::abs(c[n]) > kAgmThreshold) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * x, n);
  for (int j = n; j >= 1; --j) {
    phi = 0.5 * (phi + std::asin(c[j] * std::sin(phi) / a[j]));
  }
  sn = std::sin(phi);
  cn = std::cos(phi);
  dn = std::sqrt(std::max(0.0, 1.0 - k * k * sn * sn));
}

double distance_to_elliptic_pole(Complex s, double k) {
  check_modulus(k);
  const double kk = elliptic_k(k);
  const double kp = elliptic_k(std::sqrt(1.0 - k * k));
  const double m = std::round(s.real() / (2.0 * kk));
  const double n = std::round((s.imag() / kp - 1.0) / 2.0);
  return std::abs(s - Complex{2.0 * m * kk, (2.0 * n + 1.0) * kp});
}

JacobiTriple jacobi_elliptic(Complex s, double k) {
  check_modulus(k);
  if (distance_to_elliptic_pole(s, k) < kPoleExclusionRadius) {
    throw Error(ErrorKind::PoleProximity, "argument inside a pole exclusion disk of sn/cn/dn");
  }
  const double kc = std::sqrt(1.0 - k * k);
  double sx, cx, dx, sy, cy, dy;
  jacobi_elliptic_real(s.real(), k, sx, cx, dx);
  jacobi_elliptic_real(s.imag(), kc, sy, cy, dy);

  // Addition theorem with Jacobi's imaginary transformation on the y part.
  const double k2 = k * k;
  const double den = cy * cy + k2 * sx * sx * sy * sy;
  return {
      Complex{sx * dy, cx * dx * sy * cy} / den,
      Complex{cx * cy, -sx * dx * sy * dy} / den,
      Complex{dx * cy * dy, -k2 * sx * cx * sy} / den,
  };
}

}  // namespace jladder
