#include "jladder/hybrid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "jladder/error.hpp"

namespace jladder {
namespace {

constexpr std::array<double, 5> kGlNodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640,
};
constexpr std::array<double, 5> kGlWeights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688,
};

constexpr double kPanelWidth = 0.01;

double weight_at(double t, WeightMode mode, const EvalOptions& opts) {
  const double z = hardy_z(t, opts);
  return mode == WeightMode::Z2 ? z * z : z * z / std::log(t);
}

}  // namespace

double trig_value(TrigIndex l, double t) {
  switch (l) {
    case TrigIndex::Sin2: {
      const double s = std::sin(t);
      return s * s;
    }
    case TrigIndex::Cos2: {
      const double c = std::cos(t);
      return c * c;
    }
    case TrigIndex::Cos2t:
      return std::cos(2.0 * t);
  }
  return 0.0;
}

double offset_from_pi_l(double t, long L) {
  const long double pi_l = 3.141592653589793238462643383279502884L * static_cast<long double>(L);
  return static_cast<double>(static_cast<long double>(t) - pi_l);
}

double trig_value_reduced(TrigIndex l, double t, long L) { return trig_value(l, offset_from_pi_l(t, L)); }

const char* to_string(WeightMode mode) { return mode == WeightMode::Z2 ? "Z2" : "Z2OverLog"; }

WeightMode parse_weight_mode(const std::string& text) {
  if (text == "Z2" || text == "z2") return WeightMode::Z2;
  if (text == "Z2OverLog" || text == "z2overlog" || text == "z2-over-log") return WeightMode::Z2OverLog;
  throw Error(ErrorKind::InvalidArgument, "unknown weight mode '" + text + "'");
}

IterateQuadrature::IterateQuadrature(Interval ab, WeightMode mode, const ZetaIntegralTable& table,
                                     const LadderConfig& cfg)
    : ab_(ab), table_(&table), cfg_(cfg) {
  const int panels = std::max(4, static_cast<int>(std::ceil(ab.length() / kPanelWidth)));
  auto fill = [&](std::vector<Node>& out, int count) {
    const double width = ab.length() / count;
    const double half = 0.5 * width;
    out.reserve(static_cast<std::size_t>(count) * 2 * kGlNodes.size());
    for (int p = 0; p < count; ++p) {
      const double mid = ab.lo + (p + 0.5) * width;
      for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
        for (double sgn : {-1.0, 1.0}) {
          const double t = mid + sgn * half * kGlNodes[i];
          out.push_back({phi1(t, table, cfg), weight_at(t, mode, table.opts) * kGlWeights[i] * half});
        }
      }
    }
  };
  fill(coarse_, panels);
  fill(fine_, 2 * panels);
  scan_phi_.resize(kMeanValueScan + 1);
  for (int j = 0; j <= kMeanValueScan; ++j) {
    const double t = j == kMeanValueScan ? ab.hi : ab.lo + j * (ab.length() / kMeanValueScan);
    scan_phi_[j] = phi1(t, table, cfg);
  }
}

MeanValueIntegrals IterateQuadrature::integrals(const std::function<double(double)>& f) const {
  auto sum = [&f](const std::vector<Node>& nodes) {
    double wf = 0.0;
    double ww = 0.0;
    for (const Node& n : nodes) {
      wf += f(n.phi) * n.weight;
      ww += n.weight;
    }
    return std::array<double, 2>{wf, ww};
  };
  const auto coarse = sum(coarse_);
  const auto fine = sum(fine_);
  return {fine[0], fine[1], std::abs(fine[0] - coarse[0]) + std::abs(fine[1] - coarse[1])};
}

double IterateQuadrature::mean_value_point(const std::function<double(double)>& f) const {
  const auto ints = integrals(f);
  if (!(ints.weight > 0.0)) {
    throw Error(ErrorKind::DegenerateWeight, "weight integrates to zero on the reverse iterate");
  }
  const double mean = ints.weighted_f / ints.weight;
  const double zero_tol = 1e-15 * std::max(1.0, std::abs(mean));
  auto defect = [&](double d) { return f(phi1(d, *table_, cfg_)) - mean; };

  const double h = ab_.length() / kMeanValueScan;
  double prev_g = f(scan_phi_[0]) - mean;
  for (int j = 1; j <= kMeanValueScan; ++j) {
    const double g = f(scan_phi_[j]) - mean;
    if (j < kMeanValueScan && std::abs(g) <= zero_tol) return ab_.lo + j * h;
    if ((prev_g < 0.0) != (g < 0.0) && std::abs(prev_g) > zero_tol) {
      double lo = ab_.lo + (j - 1) * h;
      double hi = j == kMeanValueScan ? ab_.hi : ab_.lo + j * h;
      double glo = prev_g;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = defect(mid);
        if (std::abs(gm) <= zero_tol) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_g = g;
  }
  throw Error(ErrorKind::InvariantViolation, "no mean value point found in the reverse iterate");
}

MeanValueIntegrals mean_value_integrals(const std::function<double(double)>& f, Interval ab,
                                        WeightMode mode, const ZetaIntegralTable& table,
                                        const LadderConfig& cfg) {
  return IterateQuadrature(ab, mode, table, cfg).integrals(f);
}

double mean_value_point(const std::function<double(double)>& f, Interval ab, WeightMode mode,
                        const ZetaIntegralTable& table, const LadderConfig& cfg) {
  return IterateQuadrature(ab, mode, table, cfg).mean_value_point(f);
}

namespace {

Interval first_iterate(double U, long L, const ZetaIntegralTable& table, const LadderConfig& cfg) {
  if (!(U > 0.0 && U < kPi / 4.0)) {
    throw Error(ErrorKind::InvalidArgument, "U must lie in (0, pi/4)");
  }
  if (L < kMinL) throw Error(ErrorKind::BelowValidityThreshold, "L below L0 = 100");
  const double base = kPi * static_cast<double>(L);
  return {phi1_inverse(base, table, cfg), phi1_inverse(base + U, table, cfg)};
}

}  // namespace

double mean_value_point(TrigIndex l, double U, long L, WeightMode mode,
                        const ZetaIntegralTable& table, const LadderConfig& cfg) {
  const Interval ab = first_iterate(U, L, table, cfg);
  return mean_value_point([l, L](double x) { return trig_value_reduced(l, x, L); }, ab, mode, table,
                          cfg);
}

AlphaSet compute_alphas(double U, long L, WeightMode mode, const ZetaIntegralTable& table,
                        const LadderConfig& cfg) {
  AlphaSet out;
  out.U = U;
  out.L = L;
  out.weight_mode = mode;
  out.iterate = first_iterate(U, L, table, cfg);
  const IterateQuadrature quad(out.iterate, mode, table, cfg);
  const double base = kPi * static_cast<double>(L);
  for (std::size_t i = 0; i < kTrigTriple.size(); ++i) {
    const TrigIndex l = kTrigTriple[i];
    out.d[i] = quad.mean_value_point([l, L](double x) { return trig_value_reduced(l, x, L); });
    out.alpha1[i] = out.d[i];
    out.alpha0[i] = phi1(out.d[i], table, cfg);

    if (!(out.alpha1[i] > out.iterate.lo && out.alpha1[i] < out.iterate.hi)) {
      throw Error(ErrorKind::InvariantViolation, "alpha1 outside the first reverse iterate");
    }
    const double slack = 2.0 * cfg.invert_tol;
    if (!(out.alpha0[i] > base - slack && out.alpha0[i] < base + U + slack)) {
      throw Error(ErrorKind::InvariantViolation, "alpha0 outside the base segment");
    }
  }
  return out;
}

MotherReport mother_residual(const AlphaSet& alphas, const EvalOptions& opts) {
  MotherReport r;
  r.L = alphas.L;
  r.U = alphas.U;
  for (std::size_t i = 0; i < kTrigTriple.size(); ++i) {
    const double z = hardy_z(alphas.alpha1[i], opts);
    r.terms[i] = z * z * trig_value_reduced(kTrigTriple[i], alphas.alpha0[i], alphas.L);
  }
  r.residual = r.terms[0] - r.terms[1] + r.terms[2];
  const double biggest = std::max({r.terms[0], r.terms[1], r.terms[2]});
  r.rel_residual = biggest > 0.0 ? r.residual / biggest : 0.0;
  r.residual_over_a2 = r.terms[1] > 0.0 ? r.residual / r.terms[1] : 0.0;
  r.factor = r.terms[1] > 0.0 ? (r.terms[0] + r.terms[2]) / r.terms[1] : 0.0;
  return r;
}

}  // namespace jladder
