#include <cmath>
#include <cstdlib>

#include "jladder/specfun.hpp"

namespace jladder {
namespace {

constexpr double kSeriesRadius = 12.0;

Complex bessel_series(int p, Complex s) {
  const Complex half = 0.5 * s;
  Complex term{1.0, 0.0};
  for (int j = 1; j <= p; ++j) term *= half / static_cast<double>(j);
  const Complex q = -half * half;
  Complex sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + p));
    sum += term;
    if (k > std::abs(s) && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Trapezoid rule on Bessel's integral over a full period; the aliasing error is
// a sum of J_{p +- M}(s), negligible once M exceeds |s| + p by a margin.
Complex bessel_trapezoid(int p, Complex s) {
  const int m = 2 * (static_cast<int>(std::ceil(std::abs(s))) + p) + 64;
  Complex sum{0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    const double tau = 2.0 * kPi * j / m;
    // exp(i (s sin tau - p tau))
    const Complex arg = Complex{0.0, 1.0} * (s * std::sin(tau) - static_cast<double>(p) * tau);
    sum += std::exp(arg);
  }
  return sum / static_cast<double>(m);
}

}  // namespace

Complex bessel_j(int p, Complex s) {
  if (p < 0) {
    const Complex v = bessel_j(-p, s);
    return (p % 2 == 0) ? v : -v;
  }
  if (std::abs(s) <= kSeriesRadius) return bessel_series(p, s);
  return bessel_trapezoid(p, s);
}

}  // namespace jladder
