#include <array>
#include <cmath>

#include "jladder/specfun.hpp"

namespace jladder {
namespace {

// B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,        -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0,
};

constexpr double kStirlingRadius = 15.0;

// sin(pi x), cos(pi x) with exact zeros at integers and half-integers.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return std::sin(kPi * r);
}

double cos_pi(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  if (r == 0.5 || r == 1.5) return 0.0;
  return std::cos(kPi * r);
}

Complex sin_pi(Complex z) {
  const double y = kPi * z.imag();
  return {sin_pi(z.real()) * std::cosh(y), cos_pi(z.real()) * std::sinh(y)};
}

Complex stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

// Requires Re z >= 0.5.
Complex log_gamma_right(Complex z) {
  Complex shift{0.0, 0.0};
  while (std::abs(z) < kStirlingRadius) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

}  // namespace

Complex log_gamma(Complex s) {
  if (s.real() >= 0.5) return log_gamma_right(s);
  // Gamma(s) Gamma(1-s) = pi / sin(pi s); the 2 pi i term keeps the continuous branch
  const double turns = std::floor(0.5 * s.real() + 0.25);
  const Complex branch{0.0, std::copysign(2.0 * kPi, s.imag()) * turns};
  return std::log(kPi) - std::log(sin_pi(s)) - log_gamma_right(1.0 - s) + branch;
}

Complex gamma(Complex s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    return {HUGE_VAL, 0.0};
  }
  if (s.real() >= 0.5) return std::exp(log_gamma_right(s));
  return kPi / (sin_pi(s) * std::exp(log_gamma_right(1.0 - s)));
}

Complex reciprocal_gamma(Complex s) {
  if (s.real() >= 0.5) return std::exp(-log_gamma_right(s));
  return sin_pi(s) * std::exp(log_gamma_right(1.0 - s)) / kPi;
}

}  // namespace jladder
