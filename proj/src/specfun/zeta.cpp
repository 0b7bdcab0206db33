#include <array>
#include <cmath>
#include <cstring>
#include <vector>

#include "jladder/error.hpp"
#include "jladder/rs_coeffs.hpp"
#include "jladder/specfun.hpp"

namespace jladder {
namespace {

constexpr int kMaxBernoulli = 80;

// b[k] = B_{2k} / (2k)! for k = 1..kMaxBernoulli, from B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
const std::array<double, kMaxBernoulli + 1>& bernoulli_ratios() {
  static const auto table = [] {
    std::array<double, kMaxBernoulli + 1> b{};
    const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
    for (int k = 1; k <= kMaxBernoulli; ++k) {
      const int e = 2 * k;
      long double z;
      if (k == 1) {
        z = two_pi * two_pi / 24.0L;
      } else {
        constexpr int kCut = 1000;
        z = 0.0L;
        for (int n = kCut - 1; n >= 1; --n) z += std::pow(static_cast<long double>(n), -e);
        const long double nc = kCut;
        z += std::pow(nc, 1 - e) / (e - 1) + 0.5L * std::pow(nc, -e) +
             e / 12.0L * std::pow(nc, -e - 1);
      }
      const long double sign = (k % 2 == 1) ? 1.0L : -1.0L;
      b[k] = static_cast<double>(sign * 2.0L * z / std::pow(two_pi, e));
    }
    return b;
  }();
  return table;
}

// n^{-s} = exp(-s ln n)
Complex inv_pow(double log_n, Complex s) {
  const double mag = std::exp(-s.real() * log_n);
  const double ph = s.imag() * log_n;
  return {mag * std::cos(ph), -mag * std::sin(ph)};
}

constexpr int kRsMaxTerms = 400;  // covers sqrt(t / 2 pi) for t up to ~1e6

struct RsTables {
  std::array<double, kRsMaxTerms + 1> log_n{};
  std::array<double, kRsMaxTerms + 1> inv_sqrt_n{};
};

const RsTables& rs_tables() {
  static const RsTables tables = [] {
    RsTables t;
    for (int n = 1; n <= kRsMaxTerms; ++n) {
      t.log_n[n] = std::log(static_cast<double>(n));
      t.inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return t;
  }();
  return tables;
}

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

unsigned long long options_hash(const EvalOptions& opts) {
  unsigned long long h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  mix(&opts.target_abs_error, sizeof(double));
  mix(&opts.max_series_terms, sizeof(int));
  mix(&opts.height_cap, sizeof(double));
  mix(&opts.rs_min_height, sizeof(double));
  return h;
}

Complex zeta(Complex s, const EvalOptions& opts) {
  if (std::abs(s - 1.0) < kPoleExclusionRadius) {
    throw Error(ErrorKind::PoleAtOne, "zeta evaluated inside the exclusion disk around s=1");
  }
  if (std::abs(s.imag()) > opts.height_cap) {
    throw Error(ErrorKind::HeightCapExceeded, "|Im s| above the configured height cap");
  }
  if (!(opts.target_abs_error > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "target_abs_error must be positive");
  }

  const auto& b = bernoulli_ratios();
  const int max_terms = std::min(opts.max_series_terms, kMaxBernoulli - 1);

  // With |s + 2k| <= pi N for every correction used, consecutive Euler-Maclaurin
  // terms shrink by at least 4x.
  const double abs_s = std::abs(s);
  const int n_cut = std::max(10, static_cast<int>(std::ceil((abs_s + 2.0 * 20 + 2.0) / kPi)));

  Complex head{0.0, 0.0};
  for (int n = n_cut - 1; n >= 1; --n) head += inv_pow(std::log(static_cast<double>(n)), s);

  const double log_nc = std::log(static_cast<double>(n_cut));
  const Complex nc_pow = inv_pow(log_nc, s);  // N^{-s}
  const double nc = n_cut;
  Complex sum = head + nc_pow * nc / (s - 1.0) + 0.5 * nc_pow;

  // T_k = b_k N^{1-s-2k} prod_{j=0}^{2k-2} (s+j)
  Complex rising = s;                // prod_{j=0}^{2k-2} (s+j)
  Complex npow = nc_pow / nc;        // N^{-s-2k+1}
  const double inv_n2 = 1.0 / (nc * nc);
  for (int k = 1; k <= max_terms; ++k) {
    const Complex term = b[k] * rising * npow;
    sum += term;
    // Remainder bound: next term scaled by |s + 2k + 1| / (Re s + 2k + 1).
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    npow *= inv_n2;
    const Complex next = b[k + 1] * rising * npow;
    const double denom = s.real() + 2.0 * k + 1.0;
    const double bound =
        denom > 0.0 ? std::abs(next) * std::abs(s + static_cast<double>(2 * k + 1)) / denom
                    : std::abs(next) * 1e3;
    if (bound < 0.1 * opts.target_abs_error) break;
  }
  return sum;
}

double riemann_siegel_theta(double t) {
  const Complex lg = log_gamma(Complex{0.25, 0.5 * t});
  return -0.5 * t * std::log(kPi) + lg.imag();
}

double riemann_siegel_threshold(const EvalOptions& opts) {
  if (opts.rs_min_height > 0.0) return opts.rs_min_height;
  // Remainder after C4 is below 0.017 t^{-11/4} for t >= 200.
  return std::max(200.0, std::pow(0.017 / opts.target_abs_error, 4.0 / 11.0));
}

double hardy_z_riemann_siegel(double t) {
  t = std::abs(t);
  const double tau = std::sqrt(t / (2.0 * kPi));
  const int n_terms = static_cast<int>(std::floor(tau));
  if (n_terms > kRsMaxTerms) {
    throw Error(ErrorKind::HeightCapExceeded, "Riemann-Siegel main sum longer than supported");
  }
  const auto& tab = rs_tables();
  const double theta = riemann_siegel_theta(t);
  double main = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    main += tab.inv_sqrt_n[n] * std::cos(theta - t * tab.log_n[n]);
  }
  main *= 2.0;

  const double x = tau - n_terms - 0.5;
  const double w = 1.0 / tau;
  using detail::kRsC0, detail::kRsC1, detail::kRsC2, detail::kRsC3, detail::kRsC4;
  const double corr =
      horner(kRsC0, x) +
      w * (horner(kRsC1, x) + w * (horner(kRsC2, x) + w * (horner(kRsC3, x) + w * horner(kRsC4, x))));
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return main + sign * std::sqrt(w) * corr;
}

double hardy_z(double t, const EvalOptions& opts) {
  const double at = std::abs(t);
  if (at > opts.height_cap) {
    throw Error(ErrorKind::HeightCapExceeded, "hardy_z height above the configured cap");
  }
  if (at >= riemann_siegel_threshold(opts)) return hardy_z_riemann_siegel(at);
  const Complex z = zeta(Complex{0.5, at}, opts);
  const double th = riemann_siegel_theta(at);
  return (Complex{std::cos(th), std::sin(th)} * z).real();
}

}  // namespace jladder
