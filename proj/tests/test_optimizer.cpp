#include <doctest.h>

#include "cat0/optimizer.hpp"
#include "cat0/sampling.hpp"

using namespace cat0;

namespace {

// Golden-section search for the 1-d restriction of phi along [x, y]; an
// independent oracle for the resolvent placement.
double golden_minimize(const std::function<double(double)>& phi, double lo, double hi,
                       double tol = 1e-10) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  while (b - a > tol) {
    if (phi(c) < phi(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("closed-form resolvent sits at the golden-section minimizer") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(13);
  const Vec x = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);

  for (double lambda : {0.5, 1.0, 4.0}) {
    auto moreau_on_segment = [&](double t) {
      const Vec y = hyp.combine(x, a, t);
      const double da = hyp.dist(y, a);
      const double dx = hyp.dist(y, x);
      return 0.5 * da * da + dx * dx / (2.0 * lambda);
    };
    const double t_star = golden_minimize(moreau_on_segment, 0.0, 1.0);
    CHECK(t_star == doctest::Approx(lambda / (1.0 + lambda)).epsilon(1e-6));
    const Vec closed = resolvent_closed_form(hyp, x, a, lambda);
    CHECK(hyp.dist(closed, hyp.combine(x, a, t_star)) <= 1e-6);
  }

  SUBCASE("lambda = 1 is the midpoint") {
    const Vec mid = hyp.combine(x, a, 0.5);
    CHECK(hyp.dist(resolvent_closed_form(hyp, x, a, 1.0), mid) <= 1e-12);
  }
  SUBCASE("the anchor is fixed for every lambda") {
    for (double lambda : {1e-3, 1.0, 1e3}) {
      CHECK(hyp.dist(resolvent_closed_form(hyp, a, a, lambda), a) <= 1e-12);
    }
  }
  SUBCASE("tiny lambda stays near the input") {
    CHECK(hyp.dist(resolvent_closed_form(hyp, x, a, 1e-6), x) <= 1e-5);
  }
  SUBCASE("spheres are rejected") {
    const ModelSpace sph = ModelSpace::spherical(2);
    CHECK_THROWS_AS(resolvent_closed_form(sph, sph.base_point(), sph.base_point(), 1.0),
                    std::domain_error);
  }
}

TEST_CASE("numeric resolvent") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(17);
  const Vec x = sample_in_ball(hyp, hyp.base_point(), 1.2, rng);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 1.2, rng);

  SUBCASE("matches the closed form") {
    for (double lambda : {0.1, 1.0, 10.0}) {
      ResolventSpec spec{Objective::half_sq_dist(hyp, a), lambda,
                         ResolventInner::Numeric, {}};
      CHECK(hyp.dist(resolvent_numeric(spec, x),
                     resolvent_closed_form(hyp, x, a, lambda)) <= 1e-8);
    }
  }

  SUBCASE("single-anchor frechet reduces to half_sq_dist") {
    ResolventSpec spec{Objective::frechet(hyp, {a}, {1.0}), 2.0,
                       ResolventInner::Numeric, {}};
    CHECK(hyp.dist(resolvent_numeric(spec, x),
                   resolvent_closed_form(hyp, x, a, 2.0)) <= 1e-8);
  }

  SUBCASE("closed form is restricted to half_sq_dist") {
    const Vec b = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);
    ResolventSpec spec{Objective::frechet(hyp, {a, b}, {0.5, 0.5}), 1.0,
                       ResolventInner::ClosedForm, {}};
    CHECK_THROWS_AS(resolvent(spec, x), std::invalid_argument);
  }

  SUBCASE("large lambda approaches the minimizer (grid oracle)") {
    const Vec b = sample_in_ball(hyp, hyp.base_point(), 1.2, rng);
    const Objective two = Objective::frechet(hyp, {a, b}, {0.5, 0.5});
    ResolventSpec spec{two, 1e6, ResolventInner::Numeric, {}};
    const Vec out = resolvent_numeric(spec, a);
    const Vec mid = hyp.combine(a, b, 0.5);
    CHECK(hyp.dist(out, mid) <= 1e-4);

    // fine grid along [a, b] locates the same minimizer
    double best_t = 0.0, best_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20000; ++i) {
      const double t = i / 20000.0;
      const Vec y = hyp.combine(a, b, t);
      const double dxa = hyp.dist(y, a);
      const double v = two.value(y) + dxa * dxa / (2.0 * spec.lambda);
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    }
    CHECK(hyp.dist(out, hyp.combine(a, b, best_t)) <= 1e-4);
  }
}

TEST_CASE("frechet oracle") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(19);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);
  const Vec b = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);

  SUBCASE("single anchor") {
    CHECK(hyp.dist(frechet_oracle(Objective::frechet(hyp, {a}, {1.0})), a) == 0.0);
  }
  SUBCASE("two equal weights give the midpoint") {
    const Vec mean = frechet_oracle(Objective::frechet(hyp, {a, b}, {0.5, 0.5}));
    CHECK(hyp.dist(mean, hyp.combine(a, b, 0.5)) <= 1e-10);
  }
  SUBCASE("euclidean mean is the centroid") {
    const ModelSpace plane = ModelSpace::euclidean(2);
    std::vector<Vec> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(sample_in_ball(plane, plane.base_point(), 1.0, rng));
    const Vec mean = frechet_oracle(
        Objective::frechet(plane, pts, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
    const Vec centroid = (pts[0] + pts[1] + pts[2]) / 3.0;
    CHECK((mean - centroid).norm() <= 1e-10);
  }
}

TEST_CASE("anchored resolvent iteration") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(23);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);

  SUBCASE("starting at the minimizer stays put") {
    ResolventSpec spec{Objective::half_sq_dist(hyp, a), 1.0, ResolventInner::Numeric, {}};
    HalpernGDConfig cfg;
    cfg.u = a;
    cfg.x0 = a;
    cfg.horizon = 30;
    const OptRun run = hyperbolic_halpern_gd(spec, cfg);
    for (const auto& row : run.trace.rows) CHECK(row.residual <= 1e-12);
    CHECK(run.converged);
  }

  SUBCASE("dist to the target is nonincreasing when anchored there") {
    ResolventSpec spec{Objective::half_sq_dist(hyp, a), 1.0, ResolventInner::ClosedForm, {}};
    HalpernGDConfig cfg;
    cfg.u = a;
    cfg.x0 = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);
    cfg.horizon = 200;
    cfg.oracle = a;
    const OptRun run = hyperbolic_halpern_gd(spec, cfg);
    for (size_t k = 1; k < run.trace.rows.size(); ++k) {
      CHECK(run.trace.rows[k].dist_to_fix <=
            run.trace.rows[k - 1].dist_to_fix + 1e-12);
    }
    CHECK(hyp.validate(run.final).pass);
    for (double v : run.objective_values) CHECK(std::isfinite(v));
  }

  SUBCASE("alpha outside (0,1) is rejected") {
    ResolventSpec spec{Objective::half_sq_dist(hyp, a), 1.0, ResolventInner::Numeric, {}};
    HalpernGDConfig cfg;
    cfg.u = a;
    cfg.x0 = a;
    cfg.horizon = 5;
    cfg.alphas = Schedule::viscosity(0.5);  // alpha_1 = 1
    CHECK_THROWS_AS(hyperbolic_halpern_gd(spec, cfg), std::invalid_argument);
  }
}

TEST_CASE("rsgd") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(29);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);
  const Vec b = sample_in_ball(hyp, hyp.base_point(), 1.0, rng);

  SUBCASE("unit step on half_sq_dist lands exactly on the anchor") {
    RsgdConfig cfg;
    cfg.x0 = b;
    cfg.step = 1.0;
    cfg.horizon = 1;
    const OptRun run = rsgd_run(Objective::half_sq_dist(hyp, a), cfg);
    CHECK(hyp.dist(run.final, a) <= 1e-12);
  }

  SUBCASE("stationary at the minimizer") {
    RsgdConfig cfg;
    cfg.x0 = a;
    cfg.step = 0.7;
    cfg.horizon = 10;
    const OptRun run = rsgd_run(Objective::half_sq_dist(hyp, a), cfg);
    CHECK(hyp.dist(run.final, a) <= 1e-12);
    CHECK(run.trace.rows.back().residual <= 1e-12);
  }

  SUBCASE("half step from one anchor lands at the quarter point") {
    const Objective two = Objective::frechet(hyp, {a, b}, {0.5, 0.5});
    RsgdConfig cfg;
    cfg.x0 = a;
    cfg.step = 0.5;
    cfg.horizon = 1;
    const OptRun run = rsgd_run(two, cfg);
    CHECK(hyp.dist(run.final, hyp.combine(a, b, 0.25)) <= 1e-8);
  }

  SUBCASE("nonpositive step is rejected") {
    RsgdConfig cfg;
    cfg.x0 = a;
    cfg.step = 0.0;
    CHECK_THROWS_AS(rsgd_run(Objective::half_sq_dist(hyp, a), cfg), std::invalid_argument);
  }
}

TEST_CASE("custom objectives plug into the same machinery") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(37);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 0.8, rng);
  const Objective wrapped = Objective::custom(
      hyp,
      [hyp, a](const Vec& y) {
        const double d = hyp.dist(y, a);
        return 0.5 * d * d;
      },
      [hyp, a](const Vec& y) -> Vec { return -hyp.log_map(y, a); });

  const Vec x = sample_in_ball(hyp, hyp.base_point(), 0.8, rng);
  ResolventSpec spec{wrapped, 1.0, ResolventInner::Numeric, {}};
  CHECK(hyp.dist(resolvent_numeric(spec, x), resolvent_closed_form(hyp, x, a, 1.0)) <=
        1e-8);

  RsgdConfig cfg;
  cfg.x0 = x;
  cfg.step = 1.0;
  cfg.horizon = 1;
  CHECK(hyp.dist(rsgd_run(wrapped, cfg).final, a) <= 1e-12);
}

TEST_CASE("objective validation and export") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(31);
  const Vec a = sample_in_ball(hyp, hyp.base_point(), 0.5, rng);
  CHECK_THROWS_AS(Objective::frechet(hyp, {a, a}, {0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Objective::frechet(hyp, {a}, {-1.0}), std::invalid_argument);

  RsgdConfig cfg;
  cfg.x0 = hyp.base_point();
  cfg.horizon = 3;
  cfg.oracle = a;
  const OptRun run = rsgd_run(Objective::half_sq_dist(hyp, a), cfg);
  std::ostringstream os;
  run.write_csv(os);
  const std::string text = os.str();
  CHECK(text.substr(0, 36) == "k,residual,objective,dist_to_oracle\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  const auto summary = run.summary();
  CHECK(summary.contains("final_point"));
  CHECK(summary.contains("converged"));
}
