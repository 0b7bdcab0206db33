#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "jladder/ladder.hpp"

namespace jladder {

/// f1 = sin^2 t, f2 = cos^2 t, f3 = cos 2t; f1 - f2 + f3 = 0 identically.
enum class TrigIndex { Sin2 = 1, Cos2 = 2, Cos2t = 3 };

inline constexpr std::array<TrigIndex, 3> kTrigTriple = {TrigIndex::Sin2, TrigIndex::Cos2,
                                                         TrigIndex::Cos2t};

double trig_value(TrigIndex l, double t);
/// Same value evaluated as f_l(t - pi L), which is exact by pi-periodicity and keeps
/// the argument small at large heights.
double trig_value_reduced(TrigIndex l, double t, long L);
/// t - pi L, formed in extended precision.
double offset_from_pi_l(double t, long L);

enum class WeightMode { Z2, Z2OverLog };

const char* to_string(WeightMode mode);
WeightMode parse_weight_mode(const std::string& text);

inline constexpr long kMinL = 100;

struct AlphaSet {
  double U = 0.0;
  long L = 0;
  WeightMode weight_mode = WeightMode::Z2;
  /// First reverse iterate (A, B) of the base segment [pi L, pi L + U].
  Interval iterate;
  std::array<double, 3> d{};
  std::array<double, 3> alpha0{};
  std::array<double, 3> alpha1{};
};

struct MotherReport {
  long L = 0;
  double U = 0.0;
  std::array<double, 3> terms{};  // A1, A2, A3
  double residual = 0.0;          // A1 - A2 + A3
  double rel_residual = 0.0;      // residual / max(A1, A2, A3)
  double residual_over_a2 = 0.0;  // residual / A2
  /// The measured {1 + O(ln ln L / ln L)} factor: (A1 + A3) / A2.
  double factor = 0.0;
};

/// Weighted integrals over an interval of the first reverse iterate; exposed for tests.
struct MeanValueIntegrals {
  double weighted_f = 0.0;  // int f(phi1(t)) w(t) dt
  double weight = 0.0;      // int w(t) dt
  double quad_error = 0.0;  // panel-halving difference of the weighted_f integral
};

inline constexpr int kMeanValueScan = 512;

/// Quadrature nodes, weights and phi1 samples over one reverse iterate, shared by
/// every integrand evaluated there.
class IterateQuadrature {
 public:
  IterateQuadrature(Interval ab, WeightMode mode, const ZetaIntegralTable& table,
                    const LadderConfig& cfg);

  MeanValueIntegrals integrals(const std::function<double(double)>& f) const;

  /// Smallest d in (A, B) with f(phi1(d)) equal to the w-weighted mean of f(phi1(t)).
  /// A scan of kMeanValueScan points locates the first sign change, which is then
  /// bisected; an exact zero at a scan point returns that point.
  double mean_value_point(const std::function<double(double)>& f) const;

  Interval interval() const { return ab_; }

 private:
  struct Node {
    double phi;
    double weight;  // quadrature weight times w(t)
  };
  Interval ab_;
  const ZetaIntegralTable* table_;
  LadderConfig cfg_;
  std::vector<Node> coarse_;
  std::vector<Node> fine_;
  std::vector<double> scan_phi_;  // phi1 at ab.lo + j (B - A) / kMeanValueScan, j = 0..scan
};

MeanValueIntegrals mean_value_integrals(const std::function<double(double)>& f, Interval ab,
                                        WeightMode mode, const ZetaIntegralTable& table,
                                        const LadderConfig& cfg);

double mean_value_point(const std::function<double(double)>& f, Interval ab, WeightMode mode,
                        const ZetaIntegralTable& table, const LadderConfig& cfg);

double mean_value_point(TrigIndex l, double U, long L, WeightMode mode,
                        const ZetaIntegralTable& table, const LadderConfig& cfg);

/// alpha1_l = d_l, alpha0_l = phi1(d_l); invariants are checked before returning.
AlphaSet compute_alphas(double U, long L, WeightMode mode, const ZetaIntegralTable& table,
                        const LadderConfig& cfg);

MotherReport mother_residual(const AlphaSet& alphas, const EvalOptions& opts = {});

}  // namespace jladder
