#include "jladder/ladder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "jladder/error.hpp"

namespace jladder {
namespace {

// 10-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640,
};
constexpr std::array<double, 5> kGlWeights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688,
};

double z2(double t, const EvalOptions& opts) {
  const double z = hardy_z(t, opts);
  return z * z;
}

double gl_panel(double a, double b, const EvalOptions& opts) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    acc += kGlWeights[i] * (z2(mid - half * kGlNodes[i], opts) + z2(mid + half * kGlNodes[i], opts));
  }
  return acc * half;
}

// Z^2 at nodes first..last (inclusive), spread over worker threads.
Eigen::VectorXd sample_z2(Eigen::Index first, Eigen::Index last, double step,
                          const EvalOptions& opts, unsigned threads) {
  const Eigen::Index count = last - first + 1;
  Eigen::VectorXd out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const Eigen::Index chunk = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    const Eigen::Index lo = w * chunk;
    const Eigen::Index hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (Eigen::Index i = lo; i < hi; ++i) out[i] = z2(static_cast<double>(first + i) * step, opts);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void check_build_args(double t_max, double step, const EvalOptions& opts) {
  if (!(step > 0.0) || step > kMaxTableStep) {
    throw Error(ErrorKind::StepTooCoarse, "table step must lie in (0, 0.1]");
  }
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (t_max > opts.height_cap) {
    throw Error(ErrorKind::HeightCapExceeded, "t_max above the configured height cap");
  }
}

// Fills values[from+1..n] from values[from] and Z^2 samples f, where f[j] is node
// from + j and f_before is node from - 1; from and n are even. Each node depends only
// on the stored value at the start of its Simpson pair, so extending a table
// reproduces a fresh build bit for bit.
void accumulate(Eigen::VectorXd& values, const Eigen::VectorXd& f, double f_before, Eigen::Index from,
                double h) {
  const Eigen::Index n = values.size() - 1;
  for (Eigen::Index i = from; i < n; i += 2) {
    const Eigen::Index j = i - from;
    const double left = j == 0 ? f_before : f[j - 1];
    values[i + 2] = values[i] + h / 3.0 * (f[j] + 4.0 * f[j + 1] + f[j + 2]);
    // odd node: cubic through (i-1 .. i+2) over the first half-panel, clamped so the
    // table stays monotone (the integrand is nonnegative)
    const double odd = values[i] + h / 24.0 * (-left + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
    values[i + 1] = std::clamp(odd, values[i], values[i + 2]);
  }
}

// Step-halving comparison on about 1% of the Simpson pairs, scaled to the whole range.
double estimate_error(const Eigen::VectorXd& f, Eigen::Index from, double h, const EvalOptions& opts) {
  const Eigen::Index pairs = (f.size() - 1) / 2;
  if (pairs <= 0) return 0.0;
  const Eigen::Index stride = std::max<Eigen::Index>(1, pairs / std::max<Eigen::Index>(1, pairs / 100));
  double acc = 0.0;
  Eigen::Index sampled = 0;
  for (Eigen::Index j = 0; j < pairs; j += stride) {
    const Eigen::Index i = 2 * j;
    const double a = static_cast<double>(from + i) * h;
    const double coarse = h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    const double q1 = z2(a + 0.5 * h, opts);
    const double q3 = z2(a + 1.5 * h, opts);
    const double fine = h / 6.0 * (f[i] + 4.0 * q1 + 2.0 * f[i + 1] + 4.0 * q3 + f[i + 2]);
    acc += std::abs(fine - coarse) / 15.0;
    ++sampled;
  }
  return acc * static_cast<double>(pairs) / static_cast<double>(sampled);
}

// Even node count covering t_max, so the last node closes a Simpson pair; never
// steps past the height cap.
Eigen::Index node_count(double t_max, double step, const EvalOptions& opts) {
  auto n = static_cast<Eigen::Index>(std::ceil(t_max / step - 1e-9));
  n += n % 2;
  while (static_cast<double>(n) * step > opts.height_cap) n -= 2;
  return n;
}

}  // namespace

Eigen::VectorXd ZetaIntegralTable::grid() const {
  Eigen::VectorXd g(values.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = node(i);
  return g;
}

ZetaIntegralTable build_table(double t_max, double step, const EvalOptions& opts, unsigned threads) {
  check_build_args(t_max, step, opts);
  const Eigen::Index n = node_count(t_max, step, opts);
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "table needs at least one Simpson pair");
  ZetaIntegralTable table;
  table.step = step;
  table.opts = opts;
  table.values = Eigen::VectorXd::Zero(n + 1);
  const Eigen::VectorXd f = sample_z2(0, n, step, opts, threads);
  accumulate(table.values, f, f[1], 0, step);  // Z is even, so Z^2(-step) = Z^2(step)
  table.est_error = estimate_error(f, 0, step, opts);
  return table;
}

void extend_table(ZetaIntegralTable& table, double t_max, unsigned threads) {
  check_build_args(t_max, table.step, table.opts);
  const Eigen::Index n_old = table.size() - 1;
  const Eigen::Index n = node_count(t_max, table.step, table.opts);
  if (n <= n_old) return;
  const Eigen::Index from = n_old;
  const Eigen::VectorXd f = sample_z2(from, n, table.step, table.opts, threads);
  table.values.conservativeResize(n + 1);
  accumulate(table.values, f, z2(static_cast<double>(from - 1) * table.step, table.opts), from, table.step);
  table.est_error += estimate_error(f, from, table.step, table.opts);
}

double integrate_z2(double a, double b, const EvalOptions& opts, double max_panel) {
  if (b == a) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_panel)));
  const double w = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) acc += gl_panel(a + p * w, a + (p + 1) * w, opts);
  return acc;
}

double cumulative(const ZetaIntegralTable& table, double t) {
  if (t < 0.0 || t > table.t_max()) {
    throw Error(ErrorKind::TableExhausted, "height outside the cumulative table");
  }
  auto i = static_cast<Eigen::Index>(std::floor(t / table.step));
  i = std::clamp<Eigen::Index>(i, 0, table.size() - 1);
  const double ti = table.node(i);
  if (t == ti || i == table.size() - 1) {
    return table.values[i] + (t > ti ? integrate_z2(ti, t, table.opts) : 0.0);
  }
  const double t1 = table.node(i + 1);
  const double partial = integrate_z2(ti, t, table.opts);
  const double full = integrate_z2(ti, t1, table.opts);
  const double defect = table.values[i + 1] - table.values[i] - full;
  return table.values[i] + partial + (t - ti) / (t1 - ti) * defect;
}

double hardy_littlewood_main(double y, const LadderConfig& cfg) {
  return y * std::log(y) + (cfg.euler_gamma - std::log(2.0 * kPi)) * y + cfg.c0;
}

namespace {

double hl_slope(double y, const LadderConfig& cfg) {
  return std::log(y) + 1.0 + cfg.euler_gamma - std::log(2.0 * kPi);
}

// Solves hardy_littlewood_main(y) = v for y on its increasing branch.
double invert_main(double v, double guess, const LadderConfig& cfg) {
  double y = std::max(guess, 2.0);
  while (hardy_littlewood_main(y, cfg) < v) y *= 2.0;
  // Convex and increasing: Newton from the right decreases monotonically to the root.
  for (int it = 0; it < 100; ++it) {
    const double step = (hardy_littlewood_main(y, cfg) - v) / hl_slope(y, cfg);
    y -= step;
    if (std::abs(step) <= 1e-3 * cfg.invert_tol + 4e-16 * y) break;
  }
  return y;
}

}  // namespace

double phi1(double T, const ZetaIntegralTable& table, const LadderConfig& cfg) {
  if (T < cfg.t0) throw Error(ErrorKind::BelowValidityThreshold, "phi1 below the validity threshold t0");
  if (T > table.t_max()) throw Error(ErrorKind::TableExhausted, "phi1 height beyond the table");
  return invert_main(cumulative(table, T), T, cfg);
}

double phi1_inverse(double T, const ZetaIntegralTable& table, const LadderConfig& cfg) {
  if (T < cfg.t0) {
    throw Error(ErrorKind::BelowValidityThreshold, "phi1_inverse below the validity threshold t0");
  }
  const double target = hardy_littlewood_main(T, cfg);
  const auto& v = table.values;
  if (target > v[v.size() - 1]) {
    throw Error(ErrorKind::TableExhausted, "reverse iterate lies beyond the table; build it higher");
  }
  const auto* begin = v.data();
  const auto* it = std::upper_bound(begin, begin + v.size(), target);
  const Eigen::Index hi_idx = std::min<Eigen::Index>(it - begin, v.size() - 1);
  double lo = table.node(std::max<Eigen::Index>(0, hi_idx - 1));
  double hi = table.node(hi_idx);

  // Bisection on V(x) - target; the stopping rule is phrased in phi1 units.
  const double slope = hl_slope(T, cfg);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    x = 0.5 * (lo + hi);
    const double h = cumulative(table, x) - target;
    if (std::abs(h) / slope <= 0.25 * cfg.invert_tol || hi - lo <= 4e-16 * x) break;
    if (h < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  return x;
}

DisconnectedSet reverse_iterate_segment(double T, double U, int k, const ZetaIntegralTable& table,
                                        const LadderConfig& cfg) {
  if (!(U > 0.0) || U > T / std::log(T)) {
    throw Error(ErrorKind::InadmissibleU, "segment length must satisfy 0 < U <= T / ln T");
  }
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "iteration count must be non-negative");
  DisconnectedSet ds{T, U, k, {}};
  ds.components.push_back({T, T + U});
  for (int r = 1; r <= k; ++r) {
    const Interval& prev = ds.components.back();
    ds.components.push_back({phi1_inverse(prev.lo, table, cfg), phi1_inverse(prev.hi, table, cfg)});
  }
  for (int r = 1; r <= k; ++r) {
    const Interval& prev = ds.components[r - 1];
    const Interval& cur = ds.components[r];
    if (!(cur.lo > prev.hi) || !(cur.hi > cur.lo)) {
      throw Error(ErrorKind::InvariantViolation, "reverse iterates are not disjoint and increasing");
    }
    if (std::abs(phi1(cur.lo, table, cfg) - prev.lo) > 2.0 * cfg.invert_tol ||
        std::abs(phi1(cur.hi, table, cfg) - prev.hi) > 2.0 * cfg.invert_tol) {
      throw Error(ErrorKind::InvariantViolation, "phi1 does not map a component onto its predecessor");
    }
  }
  return ds;
}

double component_distance(const DisconnectedSet& ds, int r) {
  if (r < 1 || r > ds.k) throw Error(ErrorKind::IndexOutOfRange, "component index out of range");
  return ds.components[r].lo - ds.components[r - 1].lo;
}

double complement_ratio(double T, const ZetaIntegralTable& table, const LadderConfig& cfg) {
  return (T - phi1(T, table, cfg)) * std::log(T) / ((1.0 - cfg.euler_gamma) * T);
}

double required_table_height(double T, int k) {
  double h = T;
  for (int r = 0; r < k; ++r) h += 1.2 * (1.0 - kEulerGamma) * h / std::log(h) + 5.0;
  return h;
}

}  // namespace jladder
