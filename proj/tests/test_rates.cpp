#include <doctest.h>

#include "cat0/rates.hpp"

using namespace cat0;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("pi weights") {
  const Schedule half = Schedule::constant(0.5);
  CHECK(pi_weights(half, 0).values == std::vector<double>{1.0});

  const auto w1 = pi_weights(half, 1);
  CHECK(w1.values[0] == doctest::Approx(0.5));
  CHECK(w1.values[1] == doctest::Approx(0.5));

  const auto w2 = pi_weights(half, 2);
  CHECK(w2.values[0] == doctest::Approx(0.25));
  CHECK(w2.values[1] == doctest::Approx(0.25));
  CHECK(w2.values[2] == doctest::Approx(0.5));

  for (const auto& s : {half, Schedule::harmonic(), Schedule::km_ratio()}) {
    const auto w = pi_weights(s, 50);
    CHECK(std::abs(w.sum() - 1.0) <= 1e-12);
    for (double v : w.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("km bound formula") {
  const Schedule half = Schedule::constant(0.5);
  CHECK(km_bound(half, 1.0, 4) == doctest::Approx(0.5641895835477563).epsilon(1e-12));
  CHECK(km_bound(half, 2.0, 4) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(km_bound(Schedule::constant(0.1), 1.0, 100) ==
        doctest::Approx(0.18806319451591877).epsilon(1e-12));
  // a schedule of ones makes the denominator vanish
  CHECK_THROWS_AS(km_bound(Schedule::constant(1.0), 1.0, 3), std::domain_error);
  CHECK_THROWS_AS(km_bound(half, 1.0, 0), std::invalid_argument);
}

TEST_CASE("c table recursion") {
  const Schedule half = Schedule::constant(0.5);
  const CTable table(half, 10);
  for (int n = 0; n <= 10; ++n) CHECK(table.at(-1, n) == 1.0);
  CHECK(table.at(0, 1) == doctest::Approx(0.5));
  CHECK(table.p(0) == doctest::Approx(1.0));
  CHECK(table.p(1) == doctest::Approx(0.75));  // c_{1,2} = 3/8 over lambda_2 = 1/2
  CHECK(table.at(1, 2) == doctest::Approx(0.375));
  for (int n = 0; n <= 9; ++n) CHECK(table.p(n) >= 0.0);

  // entries are diam-normalized distances bounds, so they live in [0,1]
  for (const auto& s : {half, Schedule::constant(0.1), Schedule::harmonic(),
                        Schedule::km_ratio()}) {
    const CTable t(s, 30);
    for (int n = 1; n <= 30; ++n) {
      for (int m = -1; m < n; ++m) {
        CHECK(t.at(m, n) >= 0.0);
        CHECK(t.at(m, n) <= 1.0 + 1e-12);
      }
    }
  }

  CHECK_THROWS_AS(CTable(half, 100), std::length_error);
}

TEST_CASE("P_n probabilistic products stay under 1/sqrt(pi)") {
  const double limit = 1.0 / std::sqrt(M_PI);
  std::vector<Schedule> schedules;
  for (int i = 1; i <= 9; ++i) schedules.push_back(Schedule::constant(i / 10.0));
  schedules.push_back(Schedule::harmonic());
  for (const auto& s : schedules) {
    const PnReport rep = p_n_report(s, 50);
    for (int n = 0; n < 50; ++n) {
      CHECK(rep.probabilistic[n] <= limit + 1e-10);
      // the shifted product (partial sum through n+1) also stays under the cap
      double shifted = 0.0;
      for (int i = 1; i <= n + 1; ++i) {
        const double l = s.at(i);
        shifted += l * (1.0 - l);
      }
      CHECK(std::sqrt(shifted) * rep.p[n] <= limit + 1e-10);
    }
  }

  const PnReport half = p_n_report(Schedule::constant(0.5), 4);
  CHECK(half.p[0] == doctest::Approx(1.0));
  CHECK(half.probabilistic[0] == doctest::Approx(0.0));  // empty partial sum at n = 0
  CHECK(half.probabilistic[1] == doctest::Approx(0.375));
}

TEST_CASE("literature bounds") {
  CHECK(literature_bound(LiteratureBound::Lieder, 0, 1.0) == doctest::Approx(2.0));
  CHECK(literature_bound(LiteratureBound::Sabach, 3, 2.0) == doctest::Approx(2.0));
  CHECK(literature_bound(LiteratureBound::Lieder, 7, 0.0) == 0.0);
  CHECK(literature_bound(LiteratureBound::Sabach, 7, 0.0) == 0.0);
}

TEST_CASE("viscosity constants") {
  ModelMetric plane(ModelSpace::euclidean(2));
  const Vec xbar = v2(0, 0);
  const Vec x0 = v2(3, 4);

  SUBCASE("gamma and J") {
    ConstantAnchor f(xbar);
    const auto c = visc_constants(plane, x0, xbar, f, 0.5);
    CHECK(c.gamma == doctest::Approx(0.5));
    CHECK(c.J == 4);
    // f(xbar) = xbar kills the second term
    CHECK(c.c_xbar == doctest::Approx(5.0));
  }

  SUBCASE("J rounds up") {
    ConstantAnchor f(xbar);
    CHECK(visc_constants(plane, x0, xbar, f, 0.25).J == 3);   // ceil(2/0.75)
    CHECK(visc_constants(plane, x0, xbar, f, 0.75).J == 8);
  }

  SUBCASE("starting at the fixed point leaves only the drift term") {
    GeodesicContraction f(ModelSpace::euclidean(2), v2(1, 0), 0.5);
    const auto c = visc_constants(plane, xbar, xbar, f, 0.5);
    // f(xbar) = (1-beta) center, distance 0.5, divided by 1 - beta
    CHECK(c.c_xbar == doctest::Approx(1.0));
  }
}

TEST_CASE("viscosity bound report") {
  ModelMetric plane(ModelSpace::euclidean(2));
  PlanarRotation T(0.8);
  const Vec xbar = v2(0, 0);

  SUBCASE("pinned at the fixed point everything is zero") {
    ConstantAnchor f(xbar);
    IterationConfig cfg;
    cfg.x0 = xbar;
    cfg.horizon = 50;
    cfg.schedule = Schedule::viscosity(0.5);
    cfg.contraction = &f;
    const Trace trace = viscosity_run(plane, T, cfg);
    const auto consts = visc_constants(plane, cfg.x0, xbar, f, 0.5);
    CHECK(consts.c_xbar == 0.0);
    const auto rep = visc_bound_report(trace, consts);
    CHECK_FALSE(rep.violated());
    for (const auto& row : rep.step.rows) CHECK(row.observed == 0.0);
    for (const auto& row : rep.residual.rows) CHECK(row.observed == 0.0);
  }

  SUBCASE("bound constants at k = 1") {
    GeodesicContraction f(ModelSpace::euclidean(2), v2(0.4, 0.1), 0.5);
    IterationConfig cfg;
    cfg.x0 = v2(0.7, -0.2);
    cfg.horizon = 10;
    cfg.schedule = Schedule::viscosity(0.5);
    cfg.contraction = &f;
    const Trace trace = viscosity_run(plane, T, cfg);
    const auto consts = visc_constants(plane, cfg.x0, xbar, f, 0.5);
    const auto rep = visc_bound_report(trace, consts);
    // 2 J C / ((1-beta) k) = 16 C at k = 1
    CHECK(rep.step.rows[0].bound == doctest::Approx(16.0 * consts.c_xbar));
    CHECK(rep.residual.rows[0].bound == doctest::Approx(24.0 * consts.c_xbar));
  }

  SUBCASE("wrong schedule is refused") {
    ConstantAnchor f(xbar);
    IterationConfig cfg;
    cfg.x0 = v2(0.5, 0.5);
    cfg.horizon = 10;
    cfg.schedule = Schedule::harmonic();
    cfg.contraction = &f;
    const Trace trace = viscosity_run(plane, T, cfg);
    const auto consts = visc_constants(plane, cfg.x0, xbar, f, 0.5);
    CHECK_THROWS_AS(visc_bound_report(trace, consts), std::invalid_argument);
  }
}

TEST_CASE("sharpness suite") {
  const SharpnessReport rep = sharpness_suite(60, 40);
  CHECK(rep.pass);
  CHECK(rep.shift.pass);
  CHECK(rep.rotation.selected == "anchor_weight_one_minus_lambda");
  // the two conventions coincide exactly at n = 1 (lambda_1 = 1/2)
  CHECK(rep.rotation.ambiguous_ns == std::vector<int>{1});
  CHECK(rep.rotation.unique_where_distinct);

  SUBCASE("rotation residuals by hand") {
    ModelMetric plane(ModelSpace::euclidean(2));
    for (int n : {1, 3}) {
      PlanarRotation T(M_PI / (n + 1.0));
      IterationConfig cfg;
      cfg.x0 = v2(1, 0);
      cfg.anchor = cfg.x0;
      cfg.horizon = n;
      cfg.schedule = Schedule::km_ratio();
      cfg.convention = HalpernConvention::AnchorWeightOneMinusLambda;
      const Trace trace = halpern_run(plane, T, cfg);
      CHECK(std::abs(trace.rows[n].residual - 2.0 / (n + 1.0)) <= 1e-9);
    }
  }
}

TEST_CASE("representation inequality on a short run") {
  ModelMetric plane(ModelSpace::euclidean(2));
  PlanarRotation T(0.6);
  IterationConfig cfg;
  cfg.x0 = v2(0.8, 0.1);
  cfg.horizon = 25;
  cfg.schedule = Schedule::harmonic();
  cfg.store_points = true;
  const Trace trace = km_run(plane, T, cfg);
  const auto rep =
      representation_report(plane, T, trace, cfg.schedule, v2(-0.3, 0.4), 20);
  CHECK_FALSE(rep.violated);
}
