#include <doctest.h>

#include "jladder/error.hpp"
#include "jladder/levelcurve.hpp"

using namespace jladder;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

void check_sound(const LevelCurve& c) {
  CHECK(max_vertex_error(c) <= c.point_tol);
  for (const auto& line : c.polylines) {
    const auto& v = line.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) CHECK(std::abs(v[i + 1].s - v[i].s) <= 2 * c.grid_step);
    if (line.closed && v.size() > 2) CHECK(std::abs(v.back().s - v.front().s) <= 2 * c.grid_step);
    for (const auto& p : v) {
      CHECK_FALSE(c.window.excluded(p.s));
      CHECK(p.achieved_error <= c.point_tol);
    }
  }
}

std::vector<Complex> mirrored(std::vector<Complex> v) {
  for (auto& s : v) s = std::conj(s);
  return v;
}

}  // namespace

TEST_CASE("power circles") {
  for (int n : {1, 2, 3}) {
    const double c = 0.125;
    const double r = std::pow(c, 1.0 / n);
    const auto curve = trace(fn::Power{n}, c, make_window(-1, 1, -1, 1), 0.02, 1e-9);
    check_sound(curve);
    CHECK(curve.closed_count() == 1);
    const double radius_tol = 1e-9 / (n * std::pow(r, n - 1)) * 1.01;
    for (Complex s : vertex_positions(curve)) CHECK(std::abs(std::abs(s) - r) <= radius_tol);
    const auto p = pick_point(curve, PointSelector::at(0));
    CHECK(p.s.real() == doctest::Approx(r).epsilon(1e-9));
    CHECK(p.s.imag() == 0.0);
  }
}

TEST_CASE("circle is stable under grid refinement") {
  const auto coarse = trace(fn::Power{3}, 0.125, make_window(-1, 1, -1, 1), 0.04, 1e-9);
  const auto fine = trace(fn::Power{3}, 0.125, make_window(-1, 1, -1, 1), 0.02, 1e-9);
  CHECK(hausdorff_distance(vertex_positions(coarse), vertex_positions(fine)) <= 0.04);
}

TEST_CASE("cos level set meets the real axis at +-pi/3 + m pi") {
  const auto curve = trace(fn::Cos{}, 0.5, make_window(-4, 4, -4, 4), 0.02, 1e-9);
  check_sound(curve);
  const auto v = vertex_positions(curve);
  for (double x : {-2 * kPi / 3, -kPi / 3, kPi / 3, 2 * kPi / 3}) {
    double best = 1e9;
    for (Complex s : v) best = std::min(best, std::abs(s - Complex(x, 0)));
    CHECK(best < 1e-6);
  }
}

TEST_CASE("zeta ovals around the first zeros") {
  const Window w = punch_singularities(fn::Zeta{}, make_window(-1, 3, 10, 35), 0.04);
  const auto curve = trace(fn::Zeta{}, 0.8, w, 0.02, 1e-9);
  check_sound(curve);
  CHECK(curve.closed_count() >= 3);
  for (double gamma : {14.134725141734694, 21.022039638771555, 25.010857580145689}) {
    bool enclosed = false;
    for (const auto& line : curve.polylines) {
      if (!line.closed) continue;
      double lo = 1e9, hi = -1e9, left = 1e9, right = -1e9;
      for (const auto& p : line.vertices) {
        lo = std::min(lo, p.s.imag());
        hi = std::max(hi, p.s.imag());
        left = std::min(left, p.s.real());
        right = std::max(right, p.s.real());
      }
      enclosed = enclosed || (lo < gamma && gamma < hi && left < 0.5 && 0.5 < right);
    }
    CAPTURE(gamma);
    CHECK(enclosed);
  }
}

TEST_CASE("point selection") {
  const Window w = punch_singularities(fn::Zeta{}, make_window(-1, 3, 10, 35), 0.04);
  const auto curve = trace(fn::Zeta{}, 0.8, w, 0.02, 1e-9);
  const auto a = pick_point(curve, PointSelector::random(42));
  const auto b = pick_point(curve, PointSelector::random(42));
  CHECK(a.s == b.s);
  CHECK(a.achieved_error <= 1e-9);

  std::size_t worst = 0;
  for (std::size_t i = 0; i < curve.vertex_count(); ++i) {
    if (curve.vertex(i).achieved_error > curve.vertex(worst).achieved_error) worst = i;
  }
  const auto raw = pick_point(curve, PointSelector::at(worst));
  const auto polished = pick_point(curve, PointSelector::at(worst, true));
  CHECK(polished.achieved_error * 10 <= raw.achieved_error);
  CHECK(std::abs(eval_modulus(fn::Zeta{}, polished.s) - 0.8) == doctest::Approx(polished.achieved_error));

  LevelCurve empty;
  CHECK(kind_of([&] { pick_point(empty, PointSelector::at(0)); }) == ErrorKind::EmptyCurve);
  CHECK(kind_of([&] { pick_point(curve, PointSelector::at(curve.vertex_count())); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("mirror symmetry about the real axis") {
  const std::vector<std::pair<FunctionId, Window>> cases = {
      {fn::Cos{}, make_window(-4, 4, -4, 4)},
      {fn::Power{2}, make_window(-1, 1, -1, 1)},
      {fn::ReciprocalGamma{}, make_window(-4, 6, -4, 4)},
      {fn::BesselJ{1}, make_window(-6, 6, -6, 6)},
      {fn::Zeta{}, punch_singularities(fn::Zeta{}, make_window(-1, 3, -20, 20), 0.04)},
  };
  for (const auto& [f, w] : cases) {
    const auto curve = trace(f, 0.6, w, 0.04, 1e-9);
    const auto v = vertex_positions(curve);
    CAPTURE(function_name(f));
    CHECK(hausdorff_distance(v, mirrored(v)) < 1e-8);
  }
}

TEST_CASE("elliptic loci avoid the pole disks") {
  for (const char* name : {"sn:0.8", "cn:0.5", "dn:0.3"}) {
    const FunctionId f = parse_function(name);
    const Window w = default_window(f, 0.02);
    CHECK_FALSE(w.holes.empty());
    const auto curve = trace(f, 0.7, w, 0.02, 1e-9);
    check_sound(curve);
  }
}

TEST_CASE("parallel sampling is deterministic") {
  const Window w = make_window(-3, 3, -2, 2);
  const auto a = sample_modulus(fn::BesselJ{2}, w, 0.05, {}, 1);
  const auto b = sample_modulus(fn::BesselJ{2}, w, 0.05, {}, 4);
  CHECK((a.modulus == b.modulus).all());
}

TEST_CASE("attainability search") {
  const Window sliver = make_window(-3, 3, -0.01, 0.01);
  const Window grown = attainability_search(fn::Cos{}, std::cosh(1.0), sliver);
  CHECK(grown.im_max - grown.im_min > 0.02);
  CHECK(grown.im_max >= 1.0);

  const Window real_axis = make_window(-10, 10, -0.01, 0.01);
  const Window bessel = attainability_search(fn::BesselJ{1}, 0.9, real_axis);
  CHECK(bessel.im_max > real_axis.im_max);

  const Window g0 = make_window(0, 3, -2, 2);
  for (double c : {0.1, 0.5, 0.9}) {
    const Window g = attainability_search(fn::ReciprocalGamma{}, c, g0);
    CHECK(g.re_min == g0.re_min);
    CHECK(g.im_max == g0.im_max);
  }
  AttainabilityPolicy tight;
  tight.max_expansions = 3;
  CHECK(kind_of([&] { attainability_search(fn::Power{2}, 1e30, make_window(-1, 1, -1, 1), tight); }) ==
        ErrorKind::NotAttained);
}

TEST_CASE("tracer error paths") {
  CHECK(kind_of([] { trace(fn::Power{2}, 100.0, make_window(-1, 1, -1, 1), 0.02, 1e-9); }) == ErrorKind::EmptyLevelSet);
  CHECK(kind_of([] { trace(fn::Zeta{}, 0.8, make_window(0, 2, -1, 1), 0.02, 1e-9); }) ==
        ErrorKind::SingularityInWindow);
  CHECK(kind_of([] { trace(fn::Cos{}, 0.5, make_window(0, 1, 0, 1), 0.8, 1e-9); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { trace(fn::Cos{}, -0.5, make_window(0, 1, 0, 1), 0.1, 1e-9); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { make_window(2, 2, 1, 1); }) == ErrorKind::InvalidArgument);
}
