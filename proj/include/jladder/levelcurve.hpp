#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jladder/specfun.hpp"

namespace jladder {

struct ExclusionDisk {
  Complex center;
  double radius = 0.0;
};

/// Axis-aligned rectangle of the Gauss plane with punched exclusion disks.
struct Window {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
  std::vector<ExclusionDisk> holes;

  bool excluded(Complex s) const;
  bool contains(Complex s) const {
    return s.real() >= re_min && s.real() <= re_max && s.imag() >= im_min && s.imag() <= im_max;
  }
};

/// Throws InvalidArgument unless re_min < re_max and im_min < im_max.
Window make_window(double re_min, double re_max, double im_min, double im_max);

/// Adds a disk of the given radius around every singularity of f that lies within
/// reach of the window (s = 1 for zeta, the pole lattice for sn/cn/dn).
Window punch_singularities(const FunctionId& f, Window w, double radius);

/// Per-function default window, singularities already punched for grid_step.
Window default_window(const FunctionId& f, double grid_step = 0.02);

struct CurvePoint {
  Complex s;
  double achieved_error = 0.0;
};

struct Polyline {
  std::vector<CurvePoint> vertices;
  bool closed = false;
};

struct LevelCurve {
  FunctionId function;
  double c = 0.0;
  Window window;
  double grid_step = 0.0;
  double point_tol = 0.0;
  std::vector<Polyline> polylines;

  std::size_t vertex_count() const;
  /// Vertex by flat index over the polylines in order.
  const CurvePoint& vertex(std::size_t flat_index) const;
  std::size_t closed_count() const;
};

/// |f| sampled on the node lattice of a window; NaN marks punched nodes.
struct ModulusGrid {
  FunctionId function;
  Window window;
  double grid_step = 0.0;
  EvalOptions opts;
  int nx = 0;  // cells along Re
  int ny = 0;  // cells along Im
  Eigen::ArrayXXd modulus;  // (nx + 1) x (ny + 1)

  Complex node(int i, int j) const;
};

/// Samples |f| on the grid; nodes are independent, so the result does not depend on
/// the number of worker threads (0 = hardware concurrency).
ModulusGrid sample_modulus(const FunctionId& f, const Window& w, double grid_step,
                           const EvalOptions& opts = {}, unsigned threads = 0);

/// Sampled grids keyed by function, window, step and options; references stay valid
/// for the lifetime of the cache. Not thread safe.
class ModulusGridCache {
 public:
  const ModulusGrid& get(const FunctionId& f, const Window& w, double grid_step, const EvalOptions& opts = {});
  std::size_t size() const { return grids_.size(); }

 private:
  std::vector<std::pair<std::string, std::unique_ptr<ModulusGrid>>> grids_;
};

/// Marching squares on |f| - c with edge bisection to point_tol. Closed polylines
/// run counterclockwise from their vertex of largest real part.
LevelCurve trace(const ModulusGrid& grid, double c, double point_tol);
LevelCurve trace(const FunctionId& f, double c, const Window& w, double grid_step, double point_tol,
                 const EvalOptions& opts = {});

struct PointSelector {
  enum class Mode { Index, SeededRandom };
  Mode mode = Mode::Index;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool polish = false;

  static PointSelector at(std::size_t i, bool polish = false) { return {Mode::Index, i, 0, polish}; }
  static PointSelector random(std::uint64_t seed, bool polish = false) {
    return {Mode::SeededRandom, 0, seed, polish};
  }
};

CurvePoint pick_point(const LevelCurve& curve, const PointSelector& selector,
                      const EvalOptions& opts = {});

/// Newton steps on log|f| - log c; keeps the best point seen.
CurvePoint polish_point(const FunctionId& f, double c, CurvePoint start, const EvalOptions& opts = {});

/// Largest | |f(s)| - c | over all vertices, re-evaluated from scratch.
double max_vertex_error(const LevelCurve& curve, const EvalOptions& opts = {});

struct AttainabilityPolicy {
  int max_expansions = 12;
  int samples = 64;
};

/// First window in the doubling sequence from w0 on whose sample grid min|f| <= c <= max|f|.
Window attainability_search(const FunctionId& f, double c, const Window& w0,
                            const AttainabilityPolicy& policy = {}, const EvalOptions& opts = {});

/// Symmetric Hausdorff distance between two vertex sets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> vertex_positions(const LevelCurve& curve);

}  // namespace jladder
