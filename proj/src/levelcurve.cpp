#include "jladder/levelcurve.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <exception>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "jladder/error.hpp"

namespace jladder {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_pole_error(const Error& e) {
  return e.kind() == ErrorKind::PoleAtOne || e.kind() == ErrorKind::PoleProximity;
}

std::vector<Complex> singularities(const FunctionId& f, const Window& w, double reach) {
  std::vector<Complex> out;
  if (std::holds_alternative<fn::Zeta>(f)) {
    out.emplace_back(1.0, 0.0);
    return out;
  }
  double k = 0.0;
  if (const auto* e = std::get_if<fn::JacobiSN>(&f)) k = e->k;
  if (const auto* e = std::get_if<fn::JacobiCN>(&f)) k = e->k;
  if (const auto* e = std::get_if<fn::JacobiDN>(&f)) k = e->k;
  if (k == 0.0) return out;
  const double kk = elliptic_k(k);
  const double kp = elliptic_k(std::sqrt(1.0 - k * k));
  const auto m_lo = static_cast<long>(std::floor((w.re_min - reach) / (2.0 * kk)));
  const auto m_hi = static_cast<long>(std::ceil((w.re_max + reach) / (2.0 * kk)));
  const auto n_lo = static_cast<long>(std::floor(((w.im_min - reach) / kp - 1.0) / 2.0));
  const auto n_hi = static_cast<long>(std::ceil(((w.im_max + reach) / kp - 1.0) / 2.0));
  for (long m = m_lo; m <= m_hi; ++m) {
    for (long n = n_lo; n <= n_hi; ++n) {
      out.emplace_back(2.0 * static_cast<double>(m) * kk, (2.0 * static_cast<double>(n) + 1.0) * kp);
    }
  }
  return out;
}

// Signed area (shoelace); positive for counterclockwise.
double signed_area(const std::vector<CurvePoint>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex p = v[i].s;
    const Complex q = v[(i + 1) % v.size()].s;
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

void normalize(Polyline& line) {
  auto& v = line.vertices;
  if (v.empty()) return;
  if (line.closed) {
    if (signed_area(v) < 0.0) std::reverse(v.begin(), v.end());
    auto start = std::max_element(v.begin(), v.end(), [](const CurvePoint& a, const CurvePoint& b) {
      if (a.s.real() != b.s.real()) return a.s.real() < b.s.real();
      return std::abs(a.s.imag()) > std::abs(b.s.imag());
    });
    std::rotate(v.begin(), start, v.end());
  } else {
    const Complex a = v.front().s;
    const Complex b = v.back().s;
    if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag())) {
      std::reverse(v.begin(), v.end());
    }
  }
}

}  // namespace

bool Window::excluded(Complex s) const {
  return std::any_of(holes.begin(), holes.end(),
                     [s](const ExclusionDisk& d) { return std::abs(s - d.center) < d.radius; });
}

Window make_window(double re_min, double re_max, double im_min, double im_max) {
  if (!(re_min < re_max) || !(im_min < im_max)) {
    throw Error(ErrorKind::InvalidArgument, "window needs re_min < re_max and im_min < im_max");
  }
  return {re_min, re_max, im_min, im_max, {}};
}

Window punch_singularities(const FunctionId& f, Window w, double radius) {
  for (Complex p : singularities(f, w, radius)) {
    const bool near = p.real() >= w.re_min - radius && p.real() <= w.re_max + radius &&
                      p.imag() >= w.im_min - radius && p.imag() <= w.im_max + radius;
    if (near) w.holes.push_back({p, radius});
  }
  return w;
}

Window default_window(const FunctionId& f, double grid_step) {
  Window w;
  if (std::holds_alternative<fn::Zeta>(f)) {
    w = make_window(-2.0, 4.0, 5.0, 60.0);
  } else if (std::holds_alternative<fn::Cos>(f) || std::holds_alternative<fn::Power>(f)) {
    w = make_window(-4.0, 4.0, -4.0, 4.0);
  } else if (std::holds_alternative<fn::ReciprocalGamma>(f)) {
    w = make_window(-4.0, 6.0, -4.0, 4.0);
  } else if (std::holds_alternative<fn::BesselJ>(f)) {
    w = make_window(-12.0, 12.0, -12.0, 12.0);
  } else {
    double k = 0.5;
    if (const auto* e = std::get_if<fn::JacobiSN>(&f)) k = e->k;
    if (const auto* e = std::get_if<fn::JacobiCN>(&f)) k = e->k;
    if (const auto* e = std::get_if<fn::JacobiDN>(&f)) k = e->k;
    const double kk = elliptic_k(k);
    const double kp = elliptic_k(std::sqrt(1.0 - k * k));
    w = make_window(-2.0 * kk, 2.0 * kk, -2.0 * kp, 2.0 * kp);
  }
  return punch_singularities(f, std::move(w), std::max(2.0 * grid_step, kPoleExclusionRadius));
}

std::size_t LevelCurve::vertex_count() const {
  std::size_t n = 0;
  for (const auto& p : polylines) n += p.vertices.size();
  return n;
}

const CurvePoint& LevelCurve::vertex(std::size_t flat_index) const {
  for (const auto& p : polylines) {
    if (flat_index < p.vertices.size()) return p.vertices[flat_index];
    flat_index -= p.vertices.size();
  }
  throw Error(ErrorKind::IndexOutOfRange, "vertex index beyond the curve");
}

std::size_t LevelCurve::closed_count() const {
  return static_cast<std::size_t>(
      std::count_if(polylines.begin(), polylines.end(), [](const Polyline& p) { return p.closed; }));
}

Complex ModulusGrid::node(int i, int j) const {
  const double re = window.re_min + (window.re_max - window.re_min) * i / nx;
  const double im = window.im_min + (window.im_max - window.im_min) * j / ny;
  return {re, im};
}

ModulusGrid sample_modulus(const FunctionId& f, const Window& w, double grid_step,
                           const EvalOptions& opts, unsigned threads) {
  validate(f);
  if (!(grid_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid_step must be positive");
  ModulusGrid g;
  g.function = f;
  g.window = w;
  g.grid_step = grid_step;
  g.opts = opts;
  g.nx = std::max(1, static_cast<int>(std::lround((w.re_max - w.re_min) / grid_step)));
  g.ny = std::max(1, static_cast<int>(std::lround((w.im_max - w.im_min) / grid_step)));
  if (static_cast<long>(g.nx) * g.ny < 4) {
    throw Error(ErrorKind::InvalidArgument, "grid_step leaves fewer than 4 cells in the window");
  }
  g.modulus.resize(g.nx + 1, g.ny + 1);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const int columns = g.nx + 1;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = static_cast<int>(t); i < columns; i += static_cast<int>(threads)) {
          for (int j = 0; j <= g.ny; ++j) {
            const Complex s = g.node(i, j);
            if (w.excluded(s)) {
              g.modulus(i, j) = kNaN;
              continue;
            }
            try {
              g.modulus(i, j) = eval_modulus(f, s, opts);
            } catch (const Error& e) {
              if (!is_pole_error(e)) throw;
              throw Error(ErrorKind::SingularityInWindow,
                          "grid node hits an unpunched singularity of " + function_name(f));
            }
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return g;
}

const ModulusGrid& ModulusGridCache::get(const FunctionId& f, const Window& w, double grid_step,
                                         const EvalOptions& opts) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "|%.17g|%.17g|%.17g|%.17g|%.17g|%zu|%llx", w.re_min, w.re_max, w.im_min, w.im_max,
                grid_step, w.holes.size(), options_hash(opts));
  const std::string key = function_name(f) + buf;
  for (const auto& [k, g] : grids_) {
    if (k == key) return *g;
  }
  grids_.emplace_back(key, std::make_unique<ModulusGrid>(sample_modulus(f, w, grid_step, opts)));
  return *grids_.back().second;
}

namespace {

class Tracer {
 public:
  Tracer(const ModulusGrid& grid, double c, double tol) : g_(grid), c_(c), tol_(tol) {
    const std::size_t h_edges = static_cast<std::size_t>(g_.nx) * (g_.ny + 1);
    const std::size_t v_edges = static_cast<std::size_t>(g_.nx + 1) * g_.ny;
    v_offset_ = h_edges;
    edge_vertex_.assign(h_edges + v_edges, kUnset);
  }

  LevelCurve run() {
    bool any_sign_change = false;
    for (int j = 0; j < g_.ny; ++j) {
      for (int i = 0; i < g_.nx; ++i) any_sign_change |= process_cell(i, j);
    }
    if (!any_sign_change) {
      throw Error(ErrorKind::EmptyLevelSet, "no sign change of |f| - c on the grid");
    }
    LevelCurve curve;
    curve.function = g_.function;
    curve.c = c_;
    curve.window = g_.window;
    curve.grid_step = g_.grid_step;
    curve.point_tol = tol_;
    assemble(curve);
    return curve;
  }

 private:
  static constexpr int kUnset = -2;
  static constexpr int kRejected = -1;

  double value(int i, int j) const { return g_.modulus(i, j) - c_; }

  double eval_g(Complex s) const { return eval_modulus(g_.function, s, g_.opts) - c_; }

  std::size_t h_edge(int i, int j) const { return static_cast<std::size_t>(j) * g_.nx + i; }
  std::size_t v_edge(int i, int j) const {
    return v_offset_ + static_cast<std::size_t>(j) * (g_.nx + 1) + i;
  }

  // Vertex on the edge between nodes (i0,j0) and (i1,j1), or kRejected when the
  // crossing cannot be refined to tolerance outside the exclusion disks.
  int crossing(std::size_t edge, int i0, int j0, int i1, int j1) {
    if (edge_vertex_[edge] != kUnset) return edge_vertex_[edge];
    Complex a = g_.node(i0, j0);
    Complex b = g_.node(i1, j1);
    double ga = value(i0, j0);
    CurvePoint best{a, std::abs(ga)};
    if (std::abs(value(i1, j1)) < best.achieved_error) best = {b, std::abs(value(i1, j1))};
    try {
      for (int it = 0; it < 80 && best.achieved_error > tol_; ++it) {
        const Complex mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double gm = eval_g(mid);
        if (std::abs(gm) < best.achieved_error) best = {mid, std::abs(gm)};
        if ((gm >= 0.0) == (ga >= 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
    } catch (const Error& e) {
      if (!is_pole_error(e)) throw;
      best.achieved_error = std::numeric_limits<double>::infinity();
    }
    int id = kRejected;
    if (best.achieved_error <= tol_ && !g_.window.excluded(best.s)) {
      id = static_cast<int>(vertices_.size());
      vertices_.push_back(best);
      links_.push_back({-1, -1});
    }
    edge_vertex_[edge] = id;
    return id;
  }

  void link(int a, int b) {
    if (a < 0 || b < 0) return;
    auto attach = [this](int from, int to) {
      auto& l = links_[from];
      if (l[0] < 0) {
        l[0] = to;
      } else if (l[1] < 0) {
        l[1] = to;
      }
    };
    attach(a, b);
    attach(b, a);
  }

  // Returns true when the cell contains a sign change.
  bool process_cell(int i, int j) {
    const double v[4] = {value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
    if (std::isnan(v[0]) || std::isnan(v[1]) || std::isnan(v[2]) || std::isnan(v[3])) return false;
    const bool pos[4] = {v[0] >= 0.0, v[1] >= 0.0, v[2] >= 0.0, v[3] >= 0.0};
    // Edge e joins corners e and e+1 (mod 4): bottom, right, top, left.
    int e_id[4] = {kUnset, kUnset, kUnset, kUnset};
    int crossings = 0;
    auto edge_vertex = [&](int e) {
      switch (e) {
        case 0: return crossing(h_edge(i, j), i, j, i + 1, j);
        case 1: return crossing(v_edge(i + 1, j), i + 1, j, i + 1, j + 1);
        case 2: return crossing(h_edge(i, j + 1), i, j + 1, i + 1, j + 1);
        default: return crossing(v_edge(i, j), i, j, i, j + 1);
      }
    };
    for (int e = 0; e < 4; ++e) {
      if (pos[e] != pos[(e + 1) % 4]) {
        e_id[e] = edge_vertex(e);
        ++crossings;
      }
    }
    if (crossings == 0) return false;
    if (crossings == 2) {
      int a = -1;
      int b = -1;
      for (int e = 0; e < 4; ++e) {
        if (e_id[e] == kUnset) continue;
        (a == -1 ? a : b) = e;
      }
      link(e_id[a], e_id[b]);
      return true;
    }
    // Saddle: corners 0 and 2 share a sign. The centre value decides which pair of
    // opposite corners is joined through the cell.
    double centre;
    const Complex mid = 0.5 * (g_.node(i, j) + g_.node(i + 1, j + 1));
    try {
      centre = g_.window.excluded(mid) ? 0.25 * (v[0] + v[1] + v[2] + v[3]) : eval_g(mid);
    } catch (const Error& e) {
      if (!is_pole_error(e)) throw;
      centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
    }
    if ((centre >= 0.0) == pos[0]) {
      link(e_id[0], e_id[1]);  // cut off corner 1
      link(e_id[2], e_id[3]);  // cut off corner 3
    } else {
      link(e_id[3], e_id[0]);  // cut off corner 0
      link(e_id[1], e_id[2]);  // cut off corner 2
    }
    return true;
  }

  void assemble(LevelCurve& curve) {
    std::vector<char> used(vertices_.size(), 0);
    auto degree = [this](int v) { return (links_[v][0] >= 0) + (links_[v][1] >= 0); };
    auto walk = [&](int start, bool closed) {
      Polyline line;
      line.closed = closed;
      int prev = -1;
      int cur = start;
      while (cur >= 0 && !used[cur]) {
        used[cur] = 1;
        line.vertices.push_back(vertices_[cur]);
        const int next = links_[cur][0] != prev ? links_[cur][0] : links_[cur][1];
        prev = cur;
        cur = next;
      }
      normalize(line);
      curve.polylines.push_back(std::move(line));
    };
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
      if (!used[v] && degree(v) == 1) walk(v, false);
    }
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
      if (!used[v] && degree(v) == 2) walk(v, true);
    }
  }

  const ModulusGrid& g_;
  double c_;
  double tol_;
  std::size_t v_offset_ = 0;
  std::vector<int> edge_vertex_;
  std::vector<CurvePoint> vertices_;
  std::vector<std::array<int, 2>> links_;
};

}  // namespace

LevelCurve trace(const ModulusGrid& grid, double c, double point_tol) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "level value must be positive");
  if (!(point_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "point_tol must be positive");
  return Tracer(grid, c, point_tol).run();
}

LevelCurve trace(const FunctionId& f, double c, const Window& w, double grid_step, double point_tol,
                 const EvalOptions& opts) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "level value must be positive");
  return trace(sample_modulus(f, w, grid_step, opts), c, point_tol);
}

CurvePoint polish_point(const FunctionId& f, double c, CurvePoint start, const EvalOptions& opts) {
  CurvePoint best = start;
  Complex s = start.s;
  const double log_c = std::log(c);
  for (int it = 0; it < 6; ++it) {
    const Complex v = eval(f, s, opts);
    const double h = 1e-6 * std::max(1.0, std::abs(s));
    const Complex deriv = (eval(f, s + h, opts) - eval(f, s - h, opts)) / (2.0 * h);
    if (v == 0.0 || deriv == 0.0) break;
    // Newton on Re log f: the step makes (f'/f) delta real and equal to log c - log|f|.
    const Complex delta = (log_c - std::log(std::abs(v))) / (deriv / v);
    s += delta;
    const double err = std::abs(eval_modulus(f, s, opts) - c);
    if (err < best.achieved_error) best = {s, err};
    if (err == 0.0 || std::abs(delta) < 1e-16 * std::max(1.0, std::abs(s))) break;
  }
  return best;
}

CurvePoint pick_point(const LevelCurve& curve, const PointSelector& selector, const EvalOptions& opts) {
  const std::size_t n = curve.vertex_count();
  if (n == 0) throw Error(ErrorKind::EmptyCurve, "level curve has no vertices");
  std::size_t idx = selector.index;
  if (selector.mode == PointSelector::Mode::SeededRandom) {
    std::mt19937_64 rng(selector.seed);
    idx = static_cast<std::size_t>(rng() % n);
  }
  CurvePoint p = curve.vertex(idx);
  if (selector.polish) {
    try {
      const CurvePoint q = polish_point(curve.function, curve.c, p, opts);
      if (!curve.window.excluded(q.s)) p = q;
    } catch (const Error& e) {
      if (!is_pole_error(e)) throw;
    }
  }
  return p;
}

double max_vertex_error(const LevelCurve& curve, const EvalOptions& opts) {
  double worst = 0.0;
  for (const auto& line : curve.polylines) {
    for (const auto& v : line.vertices) {
      worst = std::max(worst, std::abs(eval_modulus(curve.function, v.s, opts) - curve.c));
    }
  }
  return worst;
}

Window attainability_search(const FunctionId& f, double c, const Window& w0,
                            const AttainabilityPolicy& policy, const EvalOptions& opts) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "level value must be positive");
  Window w = w0;
  for (int expansion = 0; expansion <= policy.max_expansions; ++expansion) {
    const double radius = w.holes.empty() ? kPoleExclusionRadius : w.holes.front().radius;
    w = punch_singularities(f, Window{w.re_min, w.re_max, w.im_min, w.im_max, {}}, radius);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i <= policy.samples; ++i) {
      for (int j = 0; j <= policy.samples; ++j) {
        const Complex s{w.re_min + (w.re_max - w.re_min) * i / policy.samples,
                        w.im_min + (w.im_max - w.im_min) * j / policy.samples};
        if (w.excluded(s)) continue;
        try {
          const double m = eval_modulus(f, s, opts);
          if (!std::isfinite(m)) continue;
          lo = std::min(lo, m);
          hi = std::max(hi, m);
        } catch (const Error& e) {
          if (!is_pole_error(e) && e.kind() != ErrorKind::HeightCapExceeded) throw;
        }
      }
    }
    if (lo - c <= 0.0 && hi - c >= 0.0) return w;
    const double cre = 0.5 * (w.re_min + w.re_max);
    const double cim = 0.5 * (w.im_min + w.im_max);
    const double hre = w.re_max - w.re_min;
    const double him = w.im_max - w.im_min;
    w.re_min = cre - hre;
    w.re_max = cre + hre;
    w.im_min = cim - him;
    w.im_max = cim + him;
  }
  throw Error(ErrorKind::NotAttained, "level " + std::to_string(c) + " not attained by " +
                                          function_name(f) + " within the expansion budget");
}

std::vector<Complex> vertex_positions(const LevelCurve& curve) {
  std::vector<Complex> out;
  out.reserve(curve.vertex_count());
  for (const auto& line : curve.polylines) {
    for (const auto& v : line.vertices) out.push_back(v.s);
  }
  return out;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (Complex p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (Complex q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace jladder
