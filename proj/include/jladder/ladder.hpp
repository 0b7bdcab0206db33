#pragma once

#include <Eigen/Core>
#include <vector>

#include "jladder/specfun.hpp"

namespace jladder {

/// Cumulative second moment V(t) = int_0^t Z(u)^2 du on the uniform grid t_i = i * step.
struct ZetaIntegralTable {
  double step = 0.05;
  EvalOptions opts;
  Eigen::VectorXd values;  // V(t_i)
  double est_error = 0.0;

  Eigen::Index size() const { return values.size(); }
  double node(Eigen::Index i) const { return static_cast<double>(i) * step; }
  double t_max() const { return node(values.size() - 1); }
  Eigen::VectorXd grid() const;
};

struct LadderConfig {
  double euler_gamma = kEulerGamma;
  /// Additive constant of the almost-exact representation.
  double c0 = 0.0;
  double invert_tol = 1e-8;
  /// Validity threshold; phi1 refuses heights below it.
  double t0 = 200.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct DisconnectedSet {
  double T = 0.0;
  double U = 0.0;
  int k = 0;
  std::vector<Interval> components;  // k + 1 entries, component 0 = [T, T + U]
};

inline constexpr double kMaxTableStep = 0.1;

/// Composite Simpson on the fixed grid. Node values are computed on `threads`
/// workers (0 = hardware concurrency); the result does not depend on it.
ZetaIntegralTable build_table(double t_max, double step, const EvalOptions& opts = {},
                              unsigned threads = 0);

/// Continues an existing table up to t_max; node values match a fresh build bit for bit.
void extend_table(ZetaIntegralTable& table, double t_max, unsigned threads = 0);

/// V(t) for any t in [0, t_max]: node value plus local Gauss-Legendre, blended so it is
/// continuous and reproduces the node values exactly.
double cumulative(const ZetaIntegralTable& table, double t);

/// int_a^b Z(u)^2 du by 10-point Gauss-Legendre on panels of width <= max_panel.
double integrate_z2(double a, double b, const EvalOptions& opts, double max_panel = 0.05);

/// y ln y + (gamma - ln 2 pi) y + c0
double hardy_littlewood_main(double y, const LadderConfig& cfg);

double phi1(double T, const ZetaIntegralTable& table, const LadderConfig& cfg);
double phi1_inverse(double T, const ZetaIntegralTable& table, const LadderConfig& cfg);

DisconnectedSet reverse_iterate_segment(double T, double U, int k, const ZetaIntegralTable& table,
                                        const LadderConfig& cfg);

/// Left endpoint of component r minus left endpoint of component r - 1.
double component_distance(const DisconnectedSet& ds, int r);

/// (T - phi1(T)) ln T / ((1 - gamma) T); tends to 1.
double complement_ratio(double T, const ZetaIntegralTable& table, const LadderConfig& cfg);

/// Table height needed so that k reverse iterations of T stay inside it.
double required_table_height(double T, int k);

}  // namespace jladder
