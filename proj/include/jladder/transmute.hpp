#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jladder/hybrid.hpp"
#include "jladder/levelcurve.hpp"

namespace jladder {

enum class TransmutationFamily { ZetaZeta, ZetaCos, ZetaPower, ZetaRecipGamma, ZetaBessel, ZetaElliptic };

struct TransmutationKind {
  TransmutationFamily family = TransmutationFamily::ZetaZeta;
  std::array<int, 3> n{1, 1, 1};           // ZetaPower exponents, n_l >= 1
  std::array<int, 3> p{0, 0, 0};           // ZetaBessel orders
  std::array<double, 3> k{0.5, 0.5, 0.5};  // ZetaElliptic moduli, k_l^2 in (0, 1)

  static TransmutationKind zeta_zeta() { return {}; }
  static TransmutationKind zeta_cos() { return {TransmutationFamily::ZetaCos}; }
  static TransmutationKind zeta_power(std::array<int, 3> n);
  static TransmutationKind zeta_recip_gamma() { return {TransmutationFamily::ZetaRecipGamma}; }
  static TransmutationKind zeta_bessel(std::array<int, 3> p);
  static TransmutationKind zeta_elliptic(std::array<double, 3> k);
};

/// Throws InvalidArgument on parameters outside their domains.
void validate(const TransmutationKind& kind);
/// The function whose level curve replaces the l-th trigonometric factor (l = 0, 1, 2).
FunctionId partner_function(const TransmutationKind& kind, int l);
std::string to_string(const TransmutationKind& kind);
/// "zeta", "cos", "power:2,3,1", "rgamma", "bessel:0,1,2", "elliptic:0.3,0.5,0.8".
TransmutationKind parse_transmutation_kind(const std::string& text);

struct TargetValues {
  double c1 = 0.0;  // |sin alpha0_1|
  double c2 = 0.0;  // |cos alpha0_2|
  double c3 = 0.0;  // cos 2 alpha0_3

  double operator[](int l) const { return l == 0 ? c1 : (l == 1 ? c2 : c3); }
};

TargetValues target_values(const AlphaSet& alphas);

struct TracerConfig {
  double grid_step = 0.02;
  double point_tol = 1e-9;
  bool polish = true;
  /// Overrides the per-function default window (the search still expands it when needed).
  std::optional<Window> zeta_window;
  std::optional<Window> partner_window;
  AttainabilityPolicy attainability;
  EvalOptions opts;
};

/// Exponents on the partner factors of the three terms.
inline constexpr std::array<int, 3> kPartnerPower = {2, 2, 1};

/// Every curve one transmutation needs, traced once and shared by all samples.
struct TransmutationCurves {
  TransmutationKind kind;
  AlphaSet alphas;
  TargetValues targets;
  MotherReport mother;
  std::array<double, 3> zeta_levels{};  // |zeta(1/2 + i alpha1_l)|
  std::array<LevelCurve, 3> zeta_curves;
  std::array<LevelCurve, 3> partner_curves;
  TracerConfig config;
};

/// Grids come from `cache` when given, so sweeps over kinds sample each grid once.
TransmutationCurves trace_transmutation(const TransmutationKind& kind, const AlphaSet& alphas,
                                        const TracerConfig& config = {}, ModulusGridCache* cache = nullptr);

struct TransmutationReport {
  TransmutationKind kind;
  AlphaSet alphas;
  TargetValues targets;
  std::array<double, 3> zeta_levels{};
  std::array<CurvePoint, 3> zeta_points;
  std::array<CurvePoint, 3> partner_points;
  std::array<double, 3> zeta_moduli{};
  std::array<double, 3> partner_moduli{};
  std::array<double, 3> terms{};  // B1, B2, B3
  double residual = 0.0;          // B1 - B2 + B3
  double mother_residual = 0.0;
  double delta = 0.0;   // |residual - mother_residual|
  double budget = 0.0;  // runtime tolerance budget for delta
  /// Sign agreement with the mother residual; only decided when the mother residual
  /// exceeds the budget.
  std::optional<bool> sign_consistent;
};

/// One transmuted left side at points chosen by the sample-th split of seed.
TransmutationReport sample_transmutation(const TransmutationCurves& curves, std::uint64_t seed,
                                         std::uint64_t sample = 0);

TransmutationReport build_transmutation(const TransmutationKind& kind, const AlphaSet& alphas,
                                        const TracerConfig& config = {}, std::uint64_t seed = 0);

/// Re-checks the modulus-matching invariants of a report from scratch.
void check_report(const TransmutationReport& report, const TracerConfig& config);

struct InvarianceResult {
  int samples = 0;
  double max_delta = 0.0;
  double max_budget = 0.0;
  double max_ratio = 0.0;  // max delta / budget over samples
  std::vector<TransmutationReport> reports;
};

InvarianceResult residual_invariance(const TransmutationCurves& curves, int n_samples, std::uint64_t seed);
InvarianceResult residual_invariance(const TransmutationKind& kind, const AlphaSet& alphas, int n_samples,
                                     std::uint64_t seed, const TracerConfig& config = {});

}  // namespace jladder
