#pragma once

#include <complex>
#include <string>
#include <variant>

namespace jladder {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024310;

/// Evaluation knobs shared by the zeta family.
struct EvalOptions {
  double target_abs_error = 1e-10;
  int max_series_terms = 60;
  /// Largest |Im s| accepted by zeta and hardy_z.
  double height_cap = 1e5;
  /// Hardy Z switches from Euler-Maclaurin to Riemann-Siegel above this
  /// height. Zero selects it from the Riemann-Siegel remainder bound.
  double rs_min_height = 0.0;
};

/// Stable 64-bit fingerprint of the options; recorded in table caches.
unsigned long long options_hash(const EvalOptions& opts);

namespace fn {
struct Zeta {};
struct Cos {};
struct Power {
  int n = 1;
};
struct ReciprocalGamma {};
struct BesselJ {
  int p = 0;
};
struct JacobiSN {
  double k = 0.5;
};
struct JacobiCN {
  double k = 0.5;
};
struct JacobiDN {
  double k = 0.5;
};
}  // namespace fn

using FunctionId = std::variant<fn::Zeta, fn::Cos, fn::Power, fn::ReciprocalGamma, fn::BesselJ,
                                fn::JacobiSN, fn::JacobiCN, fn::JacobiDN>;

/// Parses "zeta", "cos", "power:3", "rgamma", "bessel:-1", "sn:0.8", "cn:0.8", "dn:0.8".
FunctionId parse_function(const std::string& text);
std::string function_name(const FunctionId& f);
/// Throws InvalidArgument / ModulusOutOfRange when parameters leave their domains.
void validate(const FunctionId& f);

// ---------------------------------------------------------------------------
// Riemann zeta and the Hardy Z machinery

/// Riemann zeta by Euler-Maclaurin summation; valid on all of C except the
/// exclusion disk |s - 1| < 1e-3.
Complex zeta(Complex s, const EvalOptions& opts = {});

/// theta(t) = -(t/2) ln(pi) + Im lnGamma(1/4 + i t/2) on the continuous branch.
double riemann_siegel_theta(double t);

/// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + i t), real for real t.
double hardy_z(double t, const EvalOptions& opts = {});

/// The Riemann-Siegel path alone (main sum plus corrections C0..C4).
double hardy_z_riemann_siegel(double t);

/// Height above which hardy_z takes the Riemann-Siegel path for these options.
double riemann_siegel_threshold(const EvalOptions& opts);

// ---------------------------------------------------------------------------
// Gamma

/// lnGamma(s) on the branch continuous from the positive real axis (Re s > 0),
/// principal branch elsewhere.
Complex log_gamma(Complex s);
Complex gamma(Complex s);
/// 1/Gamma(s); entire, exact zeros at the non-positive integers.
Complex reciprocal_gamma(Complex s);

// ---------------------------------------------------------------------------
// Bessel functions of the first kind, integer order

Complex bessel_j(int p, Complex s);

// ---------------------------------------------------------------------------
// Jacobi elliptic functions, real modulus k with k^2 in (0, 1)

struct JacobiTriple {
  Complex sn;
  Complex cn;
  Complex dn;
};

/// Complete elliptic integral of the first kind K(k) by the AGM.
double elliptic_k(double k);
JacobiTriple jacobi_elliptic(Complex s, double k);
/// Real-argument triple; the building block of the complex evaluation.
void jacobi_elliptic_real(double x, double k, double& sn, double& cn, double& dn);

/// Distance from s to the nearest pole of sn/cn/dn (points 2mK + (2n+1)iK').
double distance_to_elliptic_pole(Complex s, double k);

// ---------------------------------------------------------------------------

/// |f(s)|; for ReciprocalGamma this is 1/|Gamma(s)|.
double eval_modulus(const FunctionId& f, Complex s, const EvalOptions& opts = {});
Complex eval(const FunctionId& f, Complex s, const EvalOptions& opts = {});

inline constexpr double kPoleExclusionRadius = 1e-3;

}  // namespace jladder
