#include "jladder/transmute.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include "jladder/error.hpp"

namespace jladder {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <typename T>
std::array<T, 3> parse_triple(const std::string& text) {
  std::array<T, 3> out{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(',', pos) : text.size();
    if (end == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected three parameters in '" + text + "'");
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, out[i]);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorKind::InvalidArgument, "bad parameter list '" + text + "'");
    }
    pos = end + 1;
  }
  return out;
}

template <typename T>
std::string join(const std::array<T, 3>& v) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < 3; ++i) {
    auto res = std::to_chars(buf, buf + sizeof buf, v[i]);
    if (i) out += ',';
    out.append(buf, res.ptr);
  }
  return out;
}

bool is_zeta(const FunctionId& f) { return std::holds_alternative<fn::Zeta>(f); }

LevelCurve trace_level(const FunctionId& f, double c, const Window& start, const TracerConfig& cfg,
                       ModulusGridCache& cache) {
  if (!(c > 0.0)) throw Error(ErrorKind::LevelNotAttained, "level value is zero for " + function_name(f));
  Window w;
  try {
    w = attainability_search(f, c, start, cfg.attainability, cfg.opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAttained) throw;
    throw Error(ErrorKind::LevelNotAttained, e.what());
  }
  return trace(cache.get(f, w, cfg.grid_step, cfg.opts), c, cfg.point_tol);
}

Window start_window(const FunctionId& f, const std::optional<Window>& override_window, double grid_step) {
  if (!override_window) return default_window(f, grid_step);
  Window w = *override_window;
  w.holes.clear();
  return punch_singularities(f, std::move(w), std::max(2.0 * grid_step, kPoleExclusionRadius));
}

// Central-difference magnitude of grad |f| at s.
double modulus_gradient(const FunctionId& f, Complex s, const EvalOptions& opts) {
  const double h = 1e-6 * std::max(1.0, std::abs(s));
  try {
    const double dx = (eval_modulus(f, s + Complex(h, 0), opts) - eval_modulus(f, s - Complex(h, 0), opts)) / (2 * h);
    const double dy = (eval_modulus(f, s + Complex(0, h), opts) - eval_modulus(f, s - Complex(0, h), opts)) / (2 * h);
    return std::hypot(dx, dy);
  } catch (const Error&) {
    return 0.0;
  }
}

// Bound on | |f(s)| as evaluated - the level it was traced at |.
double factor_error(const FunctionId& f, Complex s, double modulus, const TracerConfig& cfg) {
  const double position = modulus_gradient(f, s, cfg.opts) * kEps * std::max(1.0, std::abs(s));
  const double evaluation = is_zeta(f) ? cfg.opts.target_abs_error : 64.0 * kEps * std::max(1.0, modulus);
  return cfg.point_tol + position + evaluation;
}

}  // namespace

TransmutationKind TransmutationKind::zeta_power(std::array<int, 3> n) {
  TransmutationKind k{TransmutationFamily::ZetaPower};
  k.n = n;
  return k;
}

TransmutationKind TransmutationKind::zeta_bessel(std::array<int, 3> p) {
  TransmutationKind k{TransmutationFamily::ZetaBessel};
  k.p = p;
  return k;
}

TransmutationKind TransmutationKind::zeta_elliptic(std::array<double, 3> k) {
  TransmutationKind out{TransmutationFamily::ZetaElliptic};
  out.k = k;
  return out;
}

FunctionId partner_function(const TransmutationKind& kind, int l) {
  if (l < 0 || l > 2) throw Error(ErrorKind::IndexOutOfRange, "term index must be 0, 1 or 2");
  switch (kind.family) {
    case TransmutationFamily::ZetaZeta: return fn::Zeta{};
    case TransmutationFamily::ZetaCos: return fn::Cos{};
    case TransmutationFamily::ZetaPower: return fn::Power{kind.n[l]};
    case TransmutationFamily::ZetaRecipGamma: return fn::ReciprocalGamma{};
    case TransmutationFamily::ZetaBessel: return fn::BesselJ{kind.p[l]};
    case TransmutationFamily::ZetaElliptic:
      if (l == 0) return fn::JacobiSN{kind.k[0]};
      if (l == 1) return fn::JacobiCN{kind.k[1]};
      return fn::JacobiDN{kind.k[2]};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown transmutation family");
}

void validate(const TransmutationKind& kind) {
  for (int l = 0; l < 3; ++l) validate(partner_function(kind, l));
}

std::string to_string(const TransmutationKind& kind) {
  switch (kind.family) {
    case TransmutationFamily::ZetaZeta: return "zeta";
    case TransmutationFamily::ZetaCos: return "cos";
    case TransmutationFamily::ZetaPower: return "power:" + join(kind.n);
    case TransmutationFamily::ZetaRecipGamma: return "rgamma";
    case TransmutationFamily::ZetaBessel: return "bessel:" + join(kind.p);
    case TransmutationFamily::ZetaElliptic: return "elliptic:" + join(kind.k);
  }
  return "?";
}

TransmutationKind parse_transmutation_kind(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  TransmutationKind kind;
  if (head == "zeta" && tail.empty()) {
    kind = TransmutationKind::zeta_zeta();
  } else if (head == "cos" && tail.empty()) {
    kind = TransmutationKind::zeta_cos();
  } else if (head == "rgamma" && tail.empty()) {
    kind = TransmutationKind::zeta_recip_gamma();
  } else if (head == "power") {
    kind = TransmutationKind::zeta_power(parse_triple<int>(tail));
  } else if (head == "bessel") {
    kind = TransmutationKind::zeta_bessel(parse_triple<int>(tail));
  } else if (head == "elliptic") {
    kind = TransmutationKind::zeta_elliptic(parse_triple<double>(tail));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown transmutation kind '" + text + "'");
  }
  validate(kind);
  return kind;
}

TargetValues target_values(const AlphaSet& alphas) {
  if (!(alphas.U > 0.0 && alphas.U < kPi / 4)) {
    throw Error(ErrorKind::InadmissibleU, "U must lie in (0, pi/4)");
  }
  TargetValues t;
  t.c1 = std::abs(std::sin(offset_from_pi_l(alphas.alpha0[0], alphas.L)));
  t.c2 = std::abs(std::cos(offset_from_pi_l(alphas.alpha0[1], alphas.L)));
  t.c3 = std::cos(2.0 * offset_from_pi_l(alphas.alpha0[2], alphas.L));
  if (!(t.c3 > 0.0)) throw Error(ErrorKind::NonPositiveC3, "cos 2 alpha0 is not positive");
  return t;
}

TransmutationCurves trace_transmutation(const TransmutationKind& kind, const AlphaSet& alphas,
                                        const TracerConfig& config, ModulusGridCache* cache) {
  validate(kind);
  if (!(config.point_tol > 0.0) || !(config.grid_step > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tracer tolerances must be positive");
  }
  TransmutationCurves out;
  out.kind = kind;
  out.alphas = alphas;
  out.config = config;
  out.targets = target_values(alphas);
  out.mother = mother_residual(alphas, config.opts);

  ModulusGridCache local;
  ModulusGridCache& grids = cache != nullptr ? *cache : local;
  const FunctionId zeta_fn = fn::Zeta{};
  const Window zeta_start = start_window(zeta_fn, config.zeta_window, config.grid_step);
  for (int l = 0; l < 3; ++l) {
    out.zeta_levels[l] = std::abs(hardy_z(alphas.alpha1[l], config.opts));
    out.zeta_curves[l] = trace_level(zeta_fn, out.zeta_levels[l], zeta_start, config, grids);

    const FunctionId partner = partner_function(kind, l);
    const auto& override_window = is_zeta(partner) ? config.zeta_window : config.partner_window;
    out.partner_curves[l] =
        trace_level(partner, out.targets[l], start_window(partner, override_window, config.grid_step), config, grids);
  }
  return out;
}

TransmutationReport sample_transmutation(const TransmutationCurves& curves, std::uint64_t seed,
                                         std::uint64_t sample) {
  const TracerConfig& cfg = curves.config;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
  std::mt19937_64 rng(seq);

  TransmutationReport r;
  r.kind = curves.kind;
  r.alphas = curves.alphas;
  r.targets = curves.targets;
  r.zeta_levels = curves.zeta_levels;
  r.mother_residual = curves.mother.residual;

  const FunctionId zeta_fn = fn::Zeta{};
  double sensitivity = 0.0;
  for (int l = 0; l < 3; ++l) {
    const FunctionId partner = partner_function(curves.kind, l);
    r.zeta_points[l] = pick_point(curves.zeta_curves[l], PointSelector::random(rng(), cfg.polish), cfg.opts);
    r.partner_points[l] = pick_point(curves.partner_curves[l], PointSelector::random(rng(), cfg.polish), cfg.opts);
    r.zeta_moduli[l] = eval_modulus(zeta_fn, r.zeta_points[l].s, cfg.opts);
    r.partner_moduli[l] = eval_modulus(partner, r.partner_points[l].s, cfg.opts);

    const double z = r.zeta_moduli[l];
    const double p = r.partner_moduli[l];
    const int q = kPartnerPower[l];
    r.terms[l] = z * z * std::pow(p, q);

    const double ez = factor_error(zeta_fn, r.zeta_points[l].s, z, cfg);
    const double ep = factor_error(partner, r.partner_points[l].s, p, cfg);
    // First-order sensitivity of z^2 p^q, evaluated at the larger of measured and target values.
    const double zmax = std::max(z, curves.zeta_levels[l]) + ez;
    const double pmax = std::max(p, curves.targets[l]) + ep;
    sensitivity += 2.0 * zmax * std::pow(pmax, q) * ez + q * zmax * zmax * std::pow(pmax, q - 1) * ep;
  }
  r.residual = r.terms[0] - r.terms[1] + r.terms[2];
  r.delta = std::abs(r.residual - r.mother_residual);
  const double scale = std::abs(r.terms[0]) + std::abs(r.terms[1]) + std::abs(r.terms[2]) +
                       std::abs(curves.mother.terms[0]) + std::abs(curves.mother.terms[1]) +
                       std::abs(curves.mother.terms[2]);
  r.budget = sensitivity + 8.0 * kEps * scale;
  if (std::abs(r.mother_residual) > r.budget) {
    r.sign_consistent = (r.residual > 0.0) == (r.mother_residual > 0.0);
  }
  check_report(r, cfg);
  return r;
}

void check_report(const TransmutationReport& report, const TracerConfig& config) {
  const FunctionId zeta_fn = fn::Zeta{};
  for (int l = 0; l < 3; ++l) {
    const double z = eval_modulus(zeta_fn, report.zeta_points[l].s, config.opts);
    if (!(std::abs(z - report.zeta_levels[l]) <= config.point_tol)) {
      throw Error(ErrorKind::InvariantViolation, "zeta point misses its level by more than point_tol");
    }
    const double p = eval_modulus(partner_function(report.kind, l), report.partner_points[l].s, config.opts);
    if (!(std::abs(p - report.targets[l]) <= config.point_tol)) {
      throw Error(ErrorKind::InvariantViolation, "partner point misses its target by more than point_tol");
    }
  }
}

TransmutationReport build_transmutation(const TransmutationKind& kind, const AlphaSet& alphas,
                                        const TracerConfig& config, std::uint64_t seed) {
  return sample_transmutation(trace_transmutation(kind, alphas, config), seed, 0);
}

InvarianceResult residual_invariance(const TransmutationCurves& curves, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorKind::InvalidArgument, "n_samples must be positive");
  InvarianceResult out;
  out.samples = n_samples;
  out.reports.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    out.reports.push_back(sample_transmutation(curves, seed, static_cast<std::uint64_t>(i)));
    const auto& r = out.reports.back();
    out.max_delta = std::max(out.max_delta, r.delta);
    out.max_budget = std::max(out.max_budget, r.budget);
    out.max_ratio = std::max(out.max_ratio, r.delta / r.budget);
  }
  return out;
}

InvarianceResult residual_invariance(const TransmutationKind& kind, const AlphaSet& alphas, int n_samples,
                                     std::uint64_t seed, const TracerConfig& config) {
  return residual_invariance(trace_transmutation(kind, alphas, config), n_samples, seed);
}

}  // namespace jladder
