#include <doctest.h>

#include "fixtures.hpp"
#include "jladder/error.hpp"
#include "jladder/transmute.hpp"

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

const AlphaSet& alphas500() {
  static const AlphaSet a = compute_alphas(0.5, 500, WeightMode::Z2, shared_table(), {});
  return a;
}

ModulusGridCache& grids() {
  static ModulusGridCache cache;
  return cache;
}

}  // namespace

TEST_CASE("target values") {
  AlphaSet a;
  a.U = 0.5;
  a.L = 700;
  const double base = kPi * 700;
  a.alpha0 = {base + 0.1, base + 0.2, base + 0.3};
  const TargetValues t = target_values(a);
  CHECK(t.c1 == doctest::Approx(std::sin(0.1)).epsilon(1e-12));
  CHECK(t.c2 == doctest::Approx(std::cos(0.2)).epsilon(1e-12));
  CHECK(t.c3 == doctest::Approx(std::cos(0.6)).epsilon(1e-12));
  CHECK(t[0] == t.c1);
  CHECK(t[2] == t.c3);

  const TargetValues real = target_values(alphas500());
  for (int l = 0; l < 3; ++l) {
    CHECK(real[l] > 0);
    CHECK(real[l] <= 1);
  }
  CHECK(real.c3 < 1);

  a.U = 0.78;
  a.alpha0[2] = base + 0.79;
  CHECK(kind_of([&] { target_values(a); }) == ErrorKind::NonPositiveC3);
  a.U = 1.0;
  CHECK(kind_of([&] { target_values(a); }) == ErrorKind::InadmissibleU);
}

TEST_CASE("kind names") {
  for (const char* name : {"zeta", "cos", "power:2,3,1", "rgamma", "bessel:0,-1,2", "elliptic:0.3,0.5,0.8"}) {
    CHECK(to_string(parse_transmutation_kind(name)) == name);
  }
  CHECK(kind_of([] { parse_transmutation_kind("power:0,1,1"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_transmutation_kind("elliptic:0.3,1.2,0.5"); }) == ErrorKind::ModulusOutOfRange);
  CHECK(kind_of([] { parse_transmutation_kind("bessel:1,2"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_transmutation_kind("tan"); }) == ErrorKind::InvalidArgument);
  CHECK(std::holds_alternative<fn::JacobiDN>(partner_function(TransmutationKind::zeta_elliptic({0.3, 0.5, 0.8}), 2)));
}

TEST_CASE("power partners lie on circles") {
  const TracerConfig cfg;
  const auto r = sample_transmutation(
      trace_transmutation(TransmutationKind::zeta_power({1, 1, 1}), alphas500(), cfg, &grids()), 7);
  for (int l = 0; l < 3; ++l) {
    CHECK(std::abs(std::abs(r.partner_points[l].s) - r.targets[l]) <= cfg.point_tol);
    CHECK(std::abs(r.zeta_moduli[l] - r.zeta_levels[l]) <= cfg.point_tol);
  }
  CHECK(r.delta <= 10 * r.budget);
}

TEST_CASE("zeta-zeta report") {
  const TracerConfig cfg;
  const auto report = build_transmutation(TransmutationKind::zeta_zeta(), alphas500(), cfg, 3);
  check_report(report, cfg);
  CHECK(report.budget > 0);
  CHECK(report.delta <= 10 * report.budget);
  const MotherReport mother = mother_residual(alphas500());
  CHECK(report.mother_residual == mother.residual);
  for (int l = 0; l < 3; ++l) {
    const double power = kPartnerPower[l];
    CHECK(report.terms[l] == doctest::Approx(mother.terms[l]).epsilon(1e-8));
    CHECK(report.terms[l] ==
          doctest::Approx(report.zeta_moduli[l] * report.zeta_moduli[l] * std::pow(report.partner_moduli[l], power)));
  }
  if (std::abs(report.mother_residual) <= report.budget) CHECK_FALSE(report.sign_consistent.has_value());

  const auto single = residual_invariance(TransmutationKind::zeta_zeta(), alphas500(), 1, 3, cfg);
  CHECK(single.max_delta == report.delta);
}

TEST_CASE("residual invariance on the cos family") {
  const TracerConfig cfg;
  const auto curves = trace_transmutation(TransmutationKind::zeta_cos(), alphas500(), cfg, &grids());
  const auto a = residual_invariance(curves, 100, 1);
  const auto b = residual_invariance(curves, 100, 2);
  CHECK(a.samples == 100);
  CHECK(a.max_ratio <= 10);
  CHECK(b.max_ratio <= 10);
  CHECK(std::abs(a.max_delta - b.max_delta) <= std::max(a.max_budget, b.max_budget));
  const auto again = residual_invariance(curves, 100, 1);
  CHECK(again.max_delta == a.max_delta);
  CHECK(again.reports[57].zeta_points[1].s == a.reports[57].zeta_points[1].s);
}

TEST_CASE("exactness improves with the point tolerance") {
  TracerConfig loose;
  loose.polish = false;
  loose.point_tol = 1e-6;
  TracerConfig tight;
  tight.polish = false;
  tight.point_tol = 1e-11;
  const auto kind = TransmutationKind::zeta_recip_gamma();
  const auto rl = residual_invariance(kind, alphas500(), 20, 5, loose);
  const auto rt = residual_invariance(kind, alphas500(), 20, 5, tight);
  CHECK(rl.max_ratio <= 10);
  CHECK(rt.max_ratio <= 10);
  CHECK(rt.max_delta < rl.max_delta);
}

TEST_CASE("parameter sweeps build") {
  const TracerConfig cfg;
  int built = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) {
        const auto r = sample_transmutation(
            trace_transmutation(TransmutationKind::zeta_power({a, b, c}), alphas500(), cfg, &grids()), 11);
        CHECK(r.delta <= 10 * r.budget);
        ++built;
      }
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c) {
        const auto r = sample_transmutation(
            trace_transmutation(TransmutationKind::zeta_bessel({a, b, c}), alphas500(), cfg, &grids()), 11);
        CHECK(r.delta <= 10 * r.budget);
        ++built;
      }
  for (double a : {0.3, 0.8})
    for (double b : {0.3, 0.8})
      for (double c : {0.3, 0.8}) {
        const auto r = sample_transmutation(
            trace_transmutation(TransmutationKind::zeta_elliptic({a, b, c}), alphas500(), cfg, &grids()), 11);
        CHECK(r.delta <= 10 * r.budget);
        ++built;
      }
  CHECK(built == 62);
}

TEST_CASE("unattainable levels") {
  TracerConfig cfg;
  cfg.partner_window = make_window(5.0, 6.0, 5.0, 6.0);
  cfg.attainability.max_expansions = 1;
  CHECK(kind_of([&] { trace_transmutation(TransmutationKind::zeta_power({1, 1, 1}), alphas500(), cfg); }) ==
        ErrorKind::LevelNotAttained);
}
