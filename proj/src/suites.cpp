#include "cat0/suites.hpp"

#include <cmath>
#include <sstream>

namespace cat0 {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

SuiteCheck make_check(std::string name, double worst, double tol,
                      std::string note = {}) {
  SuiteCheck c;
  c.name = std::move(name);
  c.worst = worst;
  c.pass = worst >= -tol;
  if (note.empty()) note = "worst slack " + fmt(worst) + " (tol " + fmt(tol) + ")";
  c.note = std::move(note);
  return c;
}

std::vector<ModelSpace> hadamard_spaces() {
  return {ModelSpace::euclidean(2), ModelSpace::euclidean(5),
          ModelSpace::hyperbolic(2), ModelSpace::hyperbolic(3, -2.5)};
}

std::vector<ModelSpace> all_spaces() {
  auto spaces = hadamard_spaces();
  spaces.push_back(ModelSpace::spherical(2));
  spaces.push_back(ModelSpace::spherical(3, 4.0));
  return spaces;
}

double sample_radius_for(const ModelSpace& s) {
  // Stay well inside the uniqueness radius on spheres.
  return s.kappa > 0.0 ? 0.3 * s.d_kappa() : 1.2;
}

}  // namespace

bool all_pass(const std::vector<SuiteCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<SuiteCheck> suite_geometry(const GeometryParams& p) {
  std::vector<SuiteCheck> out;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  {  // |d(gamma(t1), gamma(t2))| = |t1-t2| d(x,y), plus constraint residuals
    double worst = std::numeric_limits<double>::infinity();
    double worst_constraint = 0.0;
    Rng rng(p.seed);
    for (const auto& space : all_spaces()) {
      const double radius = sample_radius_for(space);
      for (int i = 0; i < p.samples; ++i) {
        const Vec x = sample_in_ball(space, space.base_point(), radius, rng);
        const Vec y = sample_in_ball(space, space.base_point(), radius, rng);
        const double d = space.dist(x, y);
        const double t1 = unif(rng), t2 = unif(rng);
        const Vec g1 = space.combine(x, y, t1);
        const Vec g2 = space.combine(x, y, t2);
        const double dev = std::abs(space.dist(g1, g2) - std::abs(t1 - t2) * d);
        worst = std::min(worst, 1e-8 - dev);
        worst_constraint = std::max(
            {worst_constraint, space.validate(g1).residual, space.validate(g2).residual});
      }
    }
    auto check = make_check("geodesic_parameterization", worst, 0.0);
    check.note += ", max constraint residual " + fmt(worst_constraint);
    check.pass = check.pass && worst_constraint <= 1e-12;
    out.push_back(check);
  }

  {  // CC inequality on the kappa <= 0 spaces
    double worst = std::numeric_limits<double>::infinity();
    Rng rng(p.seed + 1);
    for (const auto& space : hadamard_spaces()) {
      for (int i = 0; i < p.samples; ++i) {
        const Vec x = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec y = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec z = sample_in_ball(space, space.base_point(), 1.2, rng);
        const double t = unif(rng);
        const double lhs = space.dist(z, space.combine(x, y, t));
        const double rhs = (1.0 - t) * space.dist(z, x) + t * space.dist(z, y);
        worst = std::min(worst, rhs - lhs);
      }
    }
    out.push_back(make_check("cc_inequality", worst, 1e-9));
  }

  {  // convexity of the distance along two geodesics (hyperboloid)
    double worst = std::numeric_limits<double>::infinity();
    Rng rng(p.seed + 2);
    for (const auto& space : {ModelSpace::hyperbolic(2), ModelSpace::hyperbolic(3, -2.5)}) {
      for (int i = 0; i < p.samples; ++i) {
        const Vec x0 = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec x1 = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec y0 = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec y1 = sample_in_ball(space, space.base_point(), 1.2, rng);
        const double t = unif(rng);
        const double lhs = space.dist(space.combine(x0, x1, t), space.combine(y0, y1, t));
        const double rhs = (1.0 - t) * space.dist(x0, y0) + t * space.dist(x1, y1);
        worst = std::min(worst, rhs - lhs);
      }
    }
    out.push_back(make_check("cat0_geodesic_convexity", worst, 1e-9));
  }

  {  // CAT(0) comparison inequality against planar triangles
    double worst = std::numeric_limits<double>::infinity();
    Rng rng(p.seed + 3);
    for (const auto& space : {ModelSpace::hyperbolic(2), ModelSpace::hyperbolic(3, -2.5)}) {
      for (int i = 0; i < p.samples; ++i) {
        const Vec pt = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec q = sample_in_ball(space, space.base_point(), 1.2, rng);
        const Vec r = sample_in_ball(space, space.base_point(), 1.2, rng);
        const double t = unif(rng), s = unif(rng);
        const Vec x = space.combine(pt, q, t);   // on side [p,q]
        const Vec y = space.combine(q, r, s);    // on side [q,r]
        const ComparisonTriangle tri =
            comparison_triangle(space.dist(pt, q), space.dist(pt, r), space.dist(q, r));
        const Eigen::Vector2d xb = tri.point_on_side(0, 1, t);
        const Eigen::Vector2d yb = tri.point_on_side(1, 2, s);
        worst = std::min(worst, (xb - yb).norm() - space.dist(x, y));
      }
    }
    out.push_back(make_check("cat0_comparison", worst, 1e-9));
  }

  {  // sampled metric axioms
    double worst = std::numeric_limits<double>::infinity();
    Rng rng(p.seed + 4);
    for (const auto& space : all_spaces()) {
      const double radius = sample_radius_for(space);
      for (int i = 0; i < p.samples; ++i) {
        const Vec x = sample_in_ball(space, space.base_point(), radius, rng);
        const Vec y = sample_in_ball(space, space.base_point(), radius, rng);
        const Vec z = sample_in_ball(space, space.base_point(), radius, rng);
        worst = std::min(worst, 1e-10 - std::abs(space.dist(x, y) - space.dist(y, x)));
        worst = std::min(worst,
                         space.dist(x, y) + space.dist(y, z) + 1e-10 - space.dist(x, z));
      }
    }
    auto check = make_check("metric_axioms", worst, 0.0);
    out.push_back(check);
  }

  return out;
}

std::vector<SuiteCheck> suite_operators(const OperatorParams& p) {
  std::vector<SuiteCheck> out;
  const ModelSpace plane = ModelSpace::euclidean(2);
  const ModelSpace e3 = ModelSpace::euclidean(3);
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  Rng rng(p.seed);

  {  // every advertised-nonexpansive operator stays nonexpansive
    double worst = std::numeric_limits<double>::infinity();
    std::ostringstream note;
    auto run = [&](const Metric& metric, const Operator& op, const PairSampler& sampler,
                   uint64_t seed) {
      const auto rep = check_nonexpansive(metric, op, sampler, p.trials, 1e-9, seed);
      worst = std::min(worst, 1e-9 - rep.max_excess);
      note << op.describe() << " excess " << fmt(rep.max_excess) << "; ";
    };
    ModelMetric mp(plane), me3(e3), mh(hyp);
    run(mp, PlanarRotation(0.9), ball_pair_sampler(plane, plane.base_point(), 1.0), 11);
    run(mh, EllipticRotation(hyp, 0.7), ball_pair_sampler(hyp, hyp.base_point(), 1.5), 12);
    run(mp,
        GeodesicContraction(plane, sample_in_ball(plane, plane.base_point(), 0.5, rng), 0.5),
        ball_pair_sampler(plane, plane.base_point(), 1.0), 13);
    run(mh,
        GeodesicContraction(hyp, sample_in_ball(hyp, hyp.base_point(), 0.5, rng), 0.5),
        ball_pair_sampler(hyp, hyp.base_point(), 1.5), 14);
    run(mh, ConstantAnchor(sample_in_ball(hyp, hyp.base_point(), 0.5, rng)),
        ball_pair_sampler(hyp, hyp.base_point(), 1.5), 15);
    Objective half_sq = Objective::half_sq_dist(e3, e3.base_point());
    for (double beta : {0.5, 1.0, 1.5}) {
      run(me3,
          ForwardOperator([half_sq](const Vec& x) { return half_sq.gradient(x); }, beta, 1.0),
          ball_pair_sampler(e3, e3.base_point(), 2.0), 16);
    }
    L1Metric l1;
    RightShift shift(64);
    PairSampler l1_sampler = [](Rng& r) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      Vec a = Vec::Zero(64), b = Vec::Zero(64);
      for (int i = 0; i < 62; ++i) {
        a[i] = u(r);
        b[i] = u(r);
      }
      return std::make_pair(a, b);
    };
    run(l1, shift, l1_sampler, 17);
    out.push_back(make_check("nonexpansive_zoo", worst, 0.0, note.str()));
  }

  {  // elliptic rotation fixes the base point and keeps the constraint tight
    EllipticRotation rot(hyp, 1.1);
    double worst_fix = hyp.dist(rot.apply(hyp.base_point()), hyp.base_point());
    double worst_residual = 0.0;
    for (int i = 0; i < p.trials; ++i) {
      const Vec x = sample_in_ball(hyp, hyp.base_point(), 2.0, rng);
      worst_residual = std::max(worst_residual, hyp.validate(rot.apply(x)).residual);
    }
    SuiteCheck c;
    c.name = "elliptic_rotation_base";
    c.worst = -std::max(worst_fix, worst_residual);
    c.pass = worst_fix == 0.0 && worst_residual <= 1e-13;
    c.note = "d(T p, p) = " + fmt(worst_fix) + ", max constraint residual " +
             fmt(worst_residual);
    out.push_back(c);
  }

  {  // forward fixed points coincide with gradient zeros
    double worst = 0.0;
    Objective half_sq = Objective::half_sq_dist(e3, e3.base_point());
    ForwardOperator f1([half_sq](const Vec& x) { return half_sq.gradient(x); }, 0.7, 1.0);
    worst = std::max(worst, (f1.apply(e3.base_point()) - e3.base_point()).norm());
    Vec c(3);
    c << 0.4, -0.2, 1.1;
    Vec w(3);
    w << 1.0, 2.0, 0.5;
    auto quad_grad = [c, w](const Vec& x) -> Vec { return w.asDiagonal() * (x - c); };
    ForwardOperator f2(quad_grad, 0.9, 2.0);
    worst = std::max(worst, (f2.apply(c) - c).norm());
    // beta = 1, L = 1 on half ||x||^2 collapses to the zero map
    ForwardOperator f3([half_sq](const Vec& x) { return half_sq.gradient(x); }, 1.0, 1.0);
    const Vec img = f3.apply(sample_in_ball(e3, e3.base_point(), 2.0, rng));
    worst = std::max(worst, img.norm());
    out.push_back(make_check("forward_fixed_points", 1e-10 - worst, 0.0,
                             "max |F(x*) - x*| = " + fmt(worst)));
  }

  {  // geodesic contraction respects its factor
    double worst = std::numeric_limits<double>::infinity();
    ModelMetric mh(hyp);
    for (double beta : {0.25, 0.5}) {
      GeodesicContraction f(hyp, sample_in_ball(hyp, hyp.base_point(), 0.8, rng), beta);
      const auto rep = check_nonexpansive(mh, f, ball_pair_sampler(hyp, hyp.base_point(), 1.5),
                                          p.trials, 1e-10, 21, beta);
      worst = std::min(worst, 1e-10 - rep.max_contraction_excess);
    }
    out.push_back(make_check("contraction_factor", worst, 0.0));
  }

  return out;
}

std::vector<SuiteCheck> suite_km_rates(const KmRatesParams& p) {
  std::vector<SuiteCheck> out;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Rng rng(p.seed);

  const std::vector<Schedule> schedules = {Schedule::constant(0.1), Schedule::constant(0.5),
                                           Schedule::constant(0.9), Schedule::harmonic()};

  struct Region {
    ModelSpace space;
    double radius;
    double diam;
  };
  const std::vector<Region> regions = {
      {ModelSpace::euclidean(2), 1.0, 2.0},      // unit disk
      {ModelSpace::hyperbolic(2), 0.5, 1.0},     // metric ball of diameter 1
  };

  double worst_bound = std::numeric_limits<double>::infinity();
  double worst_fejer = std::numeric_limits<double>::infinity();
  int instances = 0;
  for (const auto& region : regions) {
    const ModelSpace& space = region.space;
    ModelMetric metric(space);
    const Vec center = space.base_point();

    std::vector<std::unique_ptr<Operator>> ops;
    std::vector<Vec> fixes;
    for (int i = 0; i < p.rotations; ++i) {
      const double angle = 0.1 + unif(rng) * (M_PI - 0.2);
      if (space.is_flat()) {
        ops.push_back(std::make_unique<PlanarRotation>(angle));
      } else {
        ops.push_back(std::make_unique<EllipticRotation>(space, angle));
      }
      fixes.push_back(center);
    }
    for (int i = 0; i < p.contractions; ++i) {
      const Vec c = sample_in_ball(space, center, region.radius, rng);
      const double beta = 0.95 * unif(rng);
      ops.push_back(std::make_unique<GeodesicContraction>(space, c, beta));
      fixes.push_back(c);
    }

    for (size_t oi = 0; oi < ops.size(); ++oi) {
      for (const auto& schedule : schedules) {
        IterationConfig cfg;
        cfg.x0 = sample_in_ball(space, center, region.radius, rng);
        cfg.horizon = p.horizon;
        cfg.schedule = schedule;
        cfg.fixed_point = fixes[oi];
        const Trace trace = km_run(metric, *ops[oi], cfg);
        ++instances;

        const BoundReport rep = km_bound_report(trace, schedule, region.diam);
        worst_bound = std::min(worst_bound, rep.worst_margin);

        for (size_t n = 1; n < trace.rows.size(); ++n) {
          worst_fejer = std::min(worst_fejer, trace.rows[n - 1].dist_to_fix + 1e-9 -
                                                  trace.rows[n].dist_to_fix);
        }
      }
    }
  }

  out.push_back(make_check("km_bound_domination", worst_bound, 1e-9,
                           std::to_string(instances) + " runs, worst margin " +
                               fmt(worst_bound)));
  out.push_back(make_check("km_fejer_monotone", worst_fejer, 0.0,
                           "worst per-step slack " + fmt(worst_fejer) + " (tol 1e-9)"));
  return out;
}

std::vector<SuiteCheck> suite_c_recursion(const CRecursionParams& p) {
  std::vector<SuiteCheck> out;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Rng rng(p.seed);

  std::vector<Schedule> schedules;
  for (int i = 1; i <= 9; ++i) schedules.push_back(Schedule::constant(i / 10.0));
  schedules.push_back(Schedule::harmonic());

  struct Region {
    ModelSpace space;
    double radius;
  };
  const std::vector<Region> regions = {{ModelSpace::euclidean(2), 0.5},
                                       {ModelSpace::hyperbolic(2), 0.5}};

  double worst_cmn = std::numeric_limits<double>::infinity();
  double worst_pn = std::numeric_limits<double>::infinity();
  double worst_prob = std::numeric_limits<double>::infinity();
  double worst_repr = std::numeric_limits<double>::infinity();

  for (const auto& schedule : schedules) {
    const CTable table(schedule, p.N);
    const BoundReport prob = probabilistic_report(schedule, p.N);
    worst_prob = std::min(worst_prob, prob.worst_margin);

    for (const auto& region : regions) {
      const ModelSpace& space = region.space;
      ModelMetric metric(space);
      const Vec center = space.base_point();
      for (int draw = 0; draw < 2; ++draw) {
        std::unique_ptr<Operator> op;
        if (draw == 0) {
          const double angle = 0.2 + unif(rng) * 2.0;
          if (space.is_flat()) {
            op = std::make_unique<PlanarRotation>(angle);
          } else {
            op = std::make_unique<EllipticRotation>(space, angle);
          }
        } else {
          op = std::make_unique<GeodesicContraction>(
              space, sample_in_ball(space, center, region.radius, rng), 0.3 + 0.6 * unif(rng));
        }
        IterationConfig cfg;
        cfg.x0 = sample_in_ball(space, center, region.radius, rng);
        cfg.horizon = p.N;
        cfg.schedule = schedule;
        cfg.store_points = true;
        const Trace trace = km_run(metric, *op, cfg);

        worst_cmn = std::min(
            worst_cmn, pairwise_cmn_report(metric, trace, table, 1.0).worst_margin);
        worst_pn =
            std::min(worst_pn, residual_pn_report(trace, table, 1.0).worst_margin);
        for (int qi = 0; qi < 3; ++qi) {
          const Vec q = sample_in_ball(space, center, region.radius, rng);
          worst_repr = std::min(
              worst_repr,
              representation_report(metric, *op, trace, schedule, q, 20).worst_margin);
        }
      }
    }
  }

  out.push_back(make_check("cmn_domination", worst_cmn, 1e-9));
  out.push_back(make_check("pn_domination", worst_pn, 1e-9));
  out.push_back(make_check("probabilistic_inequality", worst_prob, 1e-10));
  out.push_back(make_check("representation_inequality", worst_repr, 1e-9));
  return out;
}

std::vector<SuiteCheck> suite_sharpness(const SharpnessParams& p) {
  std::vector<SuiteCheck> out;
  const SharpnessReport rep = sharpness_suite(p.shift_horizon, p.rotation_max_n);

  SuiteCheck shift;
  shift.name = "shift_lower_bound";
  shift.worst = rep.shift.min_slack;
  shift.pass = rep.shift.pass;
  shift.note = "min residual - 1/sqrt(n+1) = " + fmt(rep.shift.min_slack);
  out.push_back(shift);

  SuiteCheck rot;
  rot.name = "rotation_equality";
  rot.worst = -rep.rotation.max_dev_selected;
  rot.pass = rep.rotation.pass;
  std::ostringstream note;
  note << "selected " << rep.rotation.selected << ", max dev "
       << fmt(rep.rotation.max_dev_selected) << ", other convention dev >= "
       << fmt(rep.rotation.min_dev_other) << " (n >= 2), conventions coincide at "
       << rep.rotation.ambiguous_ns.size() << " n";
  rot.note = note.str();
  out.push_back(rot);
  return out;
}

std::vector<SuiteCheck> suite_viscosity(const ViscosityParams& p) {
  std::vector<SuiteCheck> out;
  const ModelSpace space = ModelSpace::hyperbolic(2);
  ModelMetric metric(space);
  const Vec xbar = space.base_point();  // fixed point of the elliptic rotation
  Rng rng(p.seed);

  double worst_step = std::numeric_limits<double>::infinity();
  double worst_res = std::numeric_limits<double>::infinity();
  double worst_bounded = std::numeric_limits<double>::infinity();
  int runs = 0;
  for (double beta : {0.25, 0.5, 0.75}) {
    for (int i = 0; i < p.centers_per_beta; ++i) {
      const EllipticRotation T(space, 0.8 + 0.3 * i);
      const GeodesicContraction f(space, sample_in_ball(space, xbar, 1.0, rng), beta);
      IterationConfig cfg;
      cfg.x0 = sample_in_ball(space, xbar, 1.0, rng);
      cfg.horizon = p.horizon;
      cfg.schedule = Schedule::viscosity(beta);
      cfg.contraction = &f;
      cfg.fixed_point = xbar;
      const Trace trace = viscosity_run(metric, T, cfg);
      ++runs;

      const ViscosityConstants consts = visc_constants(metric, cfg.x0, xbar, f, beta);
      const ViscosityBoundReport rep = visc_bound_report(trace, consts);
      worst_step = std::min(worst_step, rep.step.worst_margin);
      worst_res = std::min(worst_res, rep.residual.worst_margin);
      for (const auto& row : trace.rows) {
        worst_bounded = std::min(worst_bounded, consts.c_xbar - row.dist_to_fix);
      }
    }
  }
  out.push_back(make_check("viscosity_step_bound", worst_step, 1e-9,
                           std::to_string(runs) + " runs, worst margin " + fmt(worst_step)));
  out.push_back(make_check("viscosity_residual_bound", worst_res, 1e-9));
  out.push_back(make_check("viscosity_boundedness", worst_bounded, 1e-9));

  {  // viscosity with a constant anchor reproduces the anchored iteration
    const EllipticRotation T(space, 0.9);
    const Vec u = sample_in_ball(space, xbar, 0.8, rng);
    const ConstantAnchor f(u);
    IterationConfig cfg;
    cfg.x0 = sample_in_ball(space, xbar, 0.8, rng);
    cfg.horizon = 200;
    cfg.schedule = Schedule::harmonic();
    cfg.contraction = &f;
    const Trace visc = viscosity_run(metric, T, cfg);
    IterationConfig hcfg = cfg;
    hcfg.contraction = nullptr;
    hcfg.anchor = u;
    hcfg.convention = HalpernConvention::AnchorWeightLambda;
    const Trace halp = halpern_run(metric, T, hcfg);
    double worst = 0.0;
    for (size_t n = 0; n < visc.rows.size(); ++n) {
      worst = std::max({worst, std::abs(visc.rows[n].residual - halp.rows[n].residual),
                        std::abs(visc.rows[n].step_dist - halp.rows[n].step_dist)});
    }
    out.push_back(make_check("viscosity_matches_halpern", 1e-12 - worst, 0.0,
                             "max row difference " + fmt(worst)));
  }
  return out;
}

std::vector<SuiteCheck> suite_optimizer(const OptimizerParams& p) {
  std::vector<SuiteCheck> out;
  const ModelSpace space = ModelSpace::hyperbolic(2);
  Rng rng(p.seed);
  const Vec base = space.base_point();

  {  // closed form vs numeric resolvent of the half squared distance
    double worst = 0.0;
    for (double lambda : {0.1, 1.0, 10.0}) {
      for (int i = 0; i < p.resolvent_pairs; ++i) {
        const Vec x = sample_in_ball(space, base, 1.2, rng);
        const Vec a = sample_in_ball(space, base, 1.2, rng);
        const Vec closed = resolvent_closed_form(space, x, a, lambda);
        ResolventSpec spec{Objective::half_sq_dist(space, a), lambda,
                           ResolventInner::Numeric, {}};
        worst = std::max(worst, space.dist(closed, resolvent_numeric(spec, x)));
      }
    }
    out.push_back(make_check("resolvent_closed_vs_numeric", 1e-8 - worst, 0.0,
                             "max distance " + fmt(worst)));
  }

  std::vector<Vec> anchors = {sample_in_ball(space, base, 1.0, rng),
                              sample_in_ball(space, base, 1.0, rng),
                              sample_in_ball(space, base, 1.0, rng)};
  const Objective frechet = Objective::frechet(space, anchors, {0.5, 0.3, 0.2});

  {  // sampled 1-Lipschitz property of both resolvent routes
    double worst = 0.0;
    Rng lrng(p.seed + 1);
    const Vec a = sample_in_ball(space, base, 1.0, lrng);
    ResolventSpec closed{Objective::half_sq_dist(space, a), 1.0,
                         ResolventInner::ClosedForm, {}};
    ResolventSpec numeric{frechet, 1.0, ResolventInner::Numeric, {}};
    auto sampler = ball_pair_sampler(space, base, 1.5);
    Rng prng(p.seed + 2);
    for (int i = 0; i < p.lipschitz_pairs; ++i) {
      const auto [x, y] = sampler(prng);
      const double d = space.dist(x, y);
      worst = std::max(worst,
                       space.dist(resolvent(closed, x), resolvent(closed, y)) - d);
      worst = std::max(worst,
                       space.dist(resolvent(numeric, x), resolvent(numeric, y)) - d);
    }
    out.push_back(make_check("resolvent_lipschitz", 1e-8 - worst, 0.0,
                             "max excess " + fmt(worst)));
  }

  {  // fixed points of J coincide with minimizers
    const Vec minimizer = frechet_oracle(frechet, 1e-12);
    double worst_fix = 0.0;
    for (double lambda : {0.1, 1.0, 10.0}) {
      ResolventSpec spec{frechet, lambda, ResolventInner::Numeric, {}};
      worst_fix = std::max(worst_fix, space.dist(resolvent(spec, minimizer), minimizer));
    }
    // and J moves every point whose gradient is substantial
    double min_move = std::numeric_limits<double>::infinity();
    ResolventSpec spec{frechet, 1.0, ResolventInner::Numeric, {}};
    Rng mrng(p.seed + 3);
    int found = 0;
    while (found < 100) {
      const Vec x = sample_in_ball(space, base, 1.5, mrng);
      if (space.tangent_norm(frechet.gradient(x)) < 0.1) continue;
      ++found;
      min_move = std::min(min_move, space.dist(resolvent(spec, x), x));
    }
    SuiteCheck c;
    c.name = "resolvent_fixed_points";
    c.worst = std::min(1e-8 - worst_fix, min_move - 1e-4);
    c.pass = worst_fix <= 1e-8 && min_move >= 1e-4;
    c.note = "d(J x*, x*) = " + fmt(worst_fix) + ", min move away from x* = " + fmt(min_move);
    out.push_back(c);
  }

  {  // geodesic gradients match central finite differences
    double worst_rel = 0.0;
    Rng grng(p.seed + 4);
    const double h = 1e-5;
    for (int i = 0; i < 50; ++i) {
      const Vec y = sample_in_ball(space, base, 1.2, grng);
      const Vec g = frechet.gradient(y);
      const double gn = space.tangent_norm(g);
      std::vector<Vec> dirs = {g / gn};
      for (int k = 0; k < 3; ++k) dirs.push_back(sample_unit_tangent(space, y, grng));
      for (const Vec& w : dirs) {
        const double fd = (frechet.value(space.exp_map(y, h * w)) -
                           frechet.value(space.exp_map(y, -h * w))) /
                          (2.0 * h);
        const double an = space.tangent_inner(g, w);
        worst_rel = std::max(worst_rel, std::abs(fd - an) / std::max(gn, 1e-6));
      }
    }
    out.push_back(make_check("gradient_finite_difference", 1e-6 - worst_rel, 0.0,
                             "max relative error " + fmt(worst_rel)));
  }

  return out;
}

std::vector<SuiteCheck> suite_benchmark(const BenchmarkParams& p) {
  std::vector<SuiteCheck> out;
  const ModelSpace space = ModelSpace::hyperbolic(2);
  Rng rng(p.seed);
  const Vec base = space.base_point();

  std::vector<Vec> anchors;
  for (int i = 0; i < p.anchor_count; ++i) {
    anchors.push_back(sample_in_ball(space, base, p.anchor_radius, rng));
  }
  const Objective objective = Objective::frechet(
      space, anchors, std::vector<double>(anchors.size(), 1.0 / anchors.size()));
  const Vec oracle = frechet_oracle(objective, 1e-12);

  RsgdConfig warm;
  warm.x0 = base;
  warm.step = 0.5;
  warm.horizon = p.warm_steps;
  const Vec x0 = rsgd_run(objective, warm).final;

  ResolventSpec spec{objective, p.lambda, ResolventInner::Numeric, {}};
  HalpernGDConfig cfg;
  cfg.u = x0;
  cfg.x0 = x0;
  cfg.alphas = Schedule::harmonic();
  cfg.horizon = p.horizon;
  cfg.oracle = oracle;
  cfg.conv_tol = p.target;
  const OptRun run = hyperbolic_halpern_gd(spec, cfg);

  const double final_dist = space.dist(run.final, oracle);
  out.push_back(make_check("benchmark_final_accuracy", p.target - final_dist, 0.0,
                           "d(final, oracle) = " + fmt(final_dist) + " (target " +
                               fmt(p.target) + ", warm start dist " +
                               fmt(space.dist(x0, oracle)) + ")"));

  {  // k * residual stays bounded: the late maximum must not exceed the early one
    double early = 0.0, late = 0.0, overall = 0.0;
    for (const auto& row : run.trace.rows) {
      const double v = row.n * row.residual;
      overall = std::max(overall, v);
      if (row.n >= 10 && row.n <= p.horizon / 10) early = std::max(early, v);
      if (row.n >= p.horizon / 2) late = std::max(late, v);
    }
    SuiteCheck c;
    c.name = "benchmark_residual_decay";
    c.worst = 2.0 * early - late;
    c.pass = late <= 2.0 * early + 1e-12;
    c.note = "max k*res: early " + fmt(early) + ", late " + fmt(late) + ", overall " +
             fmt(overall);
    out.push_back(c);
  }

  {  // RSGD baseline on the same instance, for the comparison output
    RsgdConfig rs;
    rs.x0 = x0;
    rs.step = 0.5;
    rs.horizon = p.horizon;
    rs.oracle = oracle;
    const OptRun baseline = rsgd_run(objective, rs);
    SuiteCheck c;
    c.name = "benchmark_rsgd_baseline";
    const double d = space.dist(baseline.final, oracle);
    c.worst = p.target - d;
    c.pass = std::isfinite(d);
    c.note = "rsgd d(final, oracle) = " + fmt(d);
    out.push_back(c);
  }

  return out;
}

std::vector<SuiteCheck> run_suite(const std::string& name) {
  if (name == "geometry") return suite_geometry();
  if (name == "operators") return suite_operators();
  if (name == "km_rates") return suite_km_rates();
  if (name == "c_recursion") return suite_c_recursion();
  if (name == "sharpness") return suite_sharpness();
  if (name == "viscosity") return suite_viscosity();
  if (name == "optimizer") {
    auto checks = suite_optimizer();
    auto bench = suite_benchmark();
    checks.insert(checks.end(), bench.begin(), bench.end());
    return checks;
  }
  if (name == "all") {
    std::vector<SuiteCheck> all;
    for (const char* n : {"geometry", "operators", "km_rates", "c_recursion",
                          "sharpness", "viscosity", "optimizer"}) {
      auto checks = run_suite(n);
      all.insert(all.end(), checks.begin(), checks.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace cat0
