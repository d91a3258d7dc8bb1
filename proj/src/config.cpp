#include "cat0/config.hpp"

#include <fstream>

#include "cat0/sampling.hpp"

namespace cat0 {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(path + "." + key, "missing field");
  }
  return j.at(key);
}

double require_number(const json& j, const std::string& path, const char* key) {
  const json& v = require(j, path, key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (j.is_object() && j.contains(key)) return j.at(key).get<double>();
  return fallback;
}

std::string require_string(const json& j, const std::string& path, const char* key) {
  const json& v = require(j, path, key);
  if (!v.is_string()) throw ConfigError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

Vec vec_from_json(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a coordinate array");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path, "coordinates must be numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Schedule parse_schedule(const json& j, const std::string& path) {
  const std::string kind = require_string(j, path, "kind");
  try {
    if (kind == "constant") return Schedule::constant(require_number(j, path, "value"));
    if (kind == "harmonic") return Schedule::harmonic();
    if (kind == "power") return Schedule::power(require_number(j, path, "theta"));
    if (kind == "km_ratio") return Schedule::km_ratio();
    if (kind == "viscosity") return Schedule::viscosity(require_number(j, path, "beta"));
    if (kind == "table") {
      const json& vals = require(j, path, "values");
      std::vector<double> v;
      for (const auto& x : vals) v.push_back(x.get<double>());
      return Schedule::table(std::move(v));
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path, err.what());
  }
  throw ConfigError(path + ".kind", "unknown schedule kind: " + kind);
}

json schedule_to_json(const Schedule& s) {
  switch (s.kind()) {
    case Schedule::Kind::Constant:
      return {{"kind", "constant"}, {"value", s.param()}};
    case Schedule::Kind::Harmonic:
      return {{"kind", "harmonic"}};
    case Schedule::Kind::Power:
      return {{"kind", "power"}, {"theta", s.param()}};
    case Schedule::Kind::KmRatio:
      return {{"kind", "km_ratio"}};
    case Schedule::Kind::Viscosity:
      return {{"kind", "viscosity"}, {"beta", s.param()}};
    case Schedule::Kind::Table:
      return {{"kind", "table"}, {"values", s.values()}};
  }
  throw std::logic_error("schedule_to_json: unknown kind");
}

// Point directives: literal array, "base", or {"sample_radius": r} drawn from
// the experiment rng. l1 spaces accept (zero-padded) literal arrays only.
Vec parse_point(const json& v, const std::string& path, bool l1,
                const std::optional<ModelSpace>& model, int l1_length, Rng& rng) {
  if (l1) {
    Vec lit = vec_from_json(v, path);
    if (lit.size() > l1_length) throw ConfigError(path, "vector longer than the l1 window");
    Vec out = Vec::Zero(l1_length);
    out.head(lit.size()) = lit;
    return out;
  }
  if (v.is_string() && v.get<std::string>() == "base") return model->base_point();
  if (v.is_object() && v.contains("sample_radius")) {
    const double r = v.at("sample_radius").get<double>();
    if (!(r >= 0.0)) throw ConfigError(path + ".sample_radius", "radius must be >= 0");
    return sample_in_ball(*model, model->base_point(), r, rng);
  }
  Vec p = vec_from_json(v, path);
  const PointCheck check = model->validate(p);
  if (!check.pass) {
    throw ConfigError(path, "point violates the model constraint (residual " +
                                std::to_string(check.residual) + ")");
  }
  return p;
}

Objective parse_objective(const json& j, const std::string& path,
                          const ModelSpace& space, Rng& rng) {
  const std::string kind = require_string(j, path, "kind");
  auto read_anchor = [&](const json& v, const std::string& p) {
    return parse_point(v, p, false, space, 0, rng);
  };
  try {
    if (kind == "half_sq_dist") {
      return Objective::half_sq_dist(space, read_anchor(require(j, path, "anchor"),
                                                        path + ".anchor"));
    }
    if (kind == "frechet") {
      const json& av = require(j, path, "anchors");
      if (!av.is_array() || av.empty()) {
        throw ConfigError(path + ".anchors", "expected a non-empty array");
      }
      std::vector<Vec> anchors;
      for (size_t i = 0; i < av.size(); ++i) {
        anchors.push_back(read_anchor(av[i], path + ".anchors[" + std::to_string(i) + "]"));
      }
      std::vector<double> weights;
      if (j.contains("weights")) {
        for (const auto& w : j.at("weights")) weights.push_back(w.get<double>());
      } else {
        weights.assign(anchors.size(), 1.0 / anchors.size());
      }
      return Objective::frechet(space, std::move(anchors), std::move(weights));
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path, err.what());
  }
  throw ConfigError(path + ".kind", "unknown objective kind: " + kind);
}

json objective_to_json(const Objective& obj) {
  json out;
  out["kind"] = obj.kind() == Objective::Kind::HalfSqDist ? "half_sq_dist" : "frechet";
  if (obj.kind() == Objective::Kind::HalfSqDist) {
    out["anchor"] = vec_to_json(obj.anchors()[0]);
  } else {
    json anchors = json::array();
    for (const auto& a : obj.anchors()) anchors.push_back(vec_to_json(a));
    out["anchors"] = anchors;
    out["weights"] = obj.weights();
  }
  return out;
}

std::unique_ptr<Operator> parse_operator(const json& j, const std::string& path,
                                         bool l1, const std::optional<ModelSpace>& model,
                                         int l1_length, Rng& rng, json& canonical) {
  const std::string kind = require_string(j, path, "kind");
  canonical["kind"] = kind;
  auto point_field = [&](const char* key) {
    const Vec p = parse_point(require(j, path, key), path + "." + key, l1, model,
                              l1_length, rng);
    canonical[key] = vec_to_json(p);
    return p;
  };
  try {
    if (kind == "identity") return std::make_unique<Identity>();
    if (kind == "right_shift") {
      if (!l1) throw ConfigError(path, "right_shift needs the l1 space");
      return std::make_unique<RightShift>(l1_length);
    }
    if (l1) throw ConfigError(path, "only right_shift/identity run on the l1 space");
    if (kind == "planar_rotation") {
      const double angle = require_number(j, path, "angle");
      canonical["angle"] = angle;
      if (model->kappa != 0.0 || model->dim != 2) {
        throw ConfigError(path, "planar_rotation needs kappa = 0, dim = 2");
      }
      return std::make_unique<PlanarRotation>(angle);
    }
    if (kind == "elliptic_rotation") {
      const double angle = require_number(j, path, "angle");
      canonical["angle"] = angle;
      return std::make_unique<EllipticRotation>(*model, angle);
    }
    if (kind == "geodesic_contraction") {
      const double beta = require_number(j, path, "beta");
      canonical["beta"] = beta;
      return std::make_unique<GeodesicContraction>(*model, point_field("center"), beta);
    }
    if (kind == "geodesic_scaling") {
      const double factor = require_number(j, path, "factor");
      canonical["factor"] = factor;
      return std::make_unique<GeodesicScaling>(*model, point_field("center"), factor);
    }
    if (kind == "constant_anchor") {
      return std::make_unique<ConstantAnchor>(point_field("u"));
    }
    if (kind == "forward") {
      if (model->kappa != 0.0) throw ConfigError(path, "forward needs kappa = 0");
      const double beta = require_number(j, path, "beta");
      const double lipschitz = number_or(j, "lipschitz", 1.0);
      canonical["beta"] = beta;
      canonical["lipschitz"] = lipschitz;
      Objective obj = parse_objective(require(j, path, "objective"),
                                      path + ".objective", *model, rng);
      canonical["objective"] = objective_to_json(obj);
      auto grad = [obj](const Vec& x) { return obj.gradient(x); };
      return std::make_unique<ForwardOperator>(grad, beta, lipschitz);
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path, err.what());
  }
  throw ConfigError(path + ".kind", "unknown operator kind: " + kind);
}

}  // namespace

json point_json(const ModelSpace& space, const Vec& coords) {
  return {{"space", {{"kappa", space.kappa}, {"dim", space.dim}}},
          {"coords", vec_to_json(coords)}};
}

Experiment parse_experiment(const json& config) {
  Experiment e;
  json canon;

  e.seed = 0;
  if (config.contains("seed")) {
    if (!config.at("seed").is_number_unsigned() && !config.at("seed").is_number_integer()) {
      throw ConfigError("seed", "expected an integer");
    }
    e.seed = config.at("seed").get<uint64_t>();
  }
  canon["seed"] = e.seed;
  Rng rng(e.seed);

  // space
  const json& space = require(config, "", "space");
  const json& iteration = require(config, "", "iteration");
  const std::string kind = require_string(iteration, "iteration", "kind");
  e.kind = kind;
  e.iter.horizon = static_cast<int>(number_or(iteration, "horizon", 100));
  if (e.iter.horizon < 0) throw ConfigError("iteration.horizon", "must be >= 0");

  if (space.is_object() && space.contains("l1")) {
    e.l1 = true;
    e.metric = std::make_unique<L1Metric>();
    canon["space"] = {{"l1", true}};
  } else {
    ModelSpace m;
    m.kappa = require_number(space, "space", "kappa");
    m.dim = static_cast<int>(require_number(space, "space", "dim"));
    if (m.dim < 1) throw ConfigError("space.dim", "must be >= 1");
    e.model = m;
    e.metric = std::make_unique<ModelMetric>(m);
    canon["space"] = {{"kappa", m.kappa}, {"dim", m.dim}};
  }
  const int l1_length = e.iter.horizon + 2;

  json canon_iter;
  canon_iter["kind"] = kind;
  canon_iter["horizon"] = e.iter.horizon;

  e.iter.x0 = parse_point(require(iteration, "iteration", "x0"), "iteration.x0", e.l1,
                          e.model, l1_length, rng);
  canon_iter["x0"] = vec_to_json(e.iter.x0);

  if (iteration.contains("schedule")) {
    e.iter.schedule = parse_schedule(iteration.at("schedule"), "iteration.schedule");
  } else if (kind == "halpern_gd") {
    e.iter.schedule = Schedule::harmonic();
  } else if (kind == "viscosity") {
    throw ConfigError("iteration.schedule", "viscosity runs need a schedule");
  }
  canon_iter["schedule"] = schedule_to_json(e.iter.schedule);

  e.iter.store_points = iteration.value("store_points", false);
  canon_iter["store_points"] = e.iter.store_points;

  if (iteration.contains("fixed_point")) {
    e.iter.fixed_point = parse_point(iteration.at("fixed_point"), "iteration.fixed_point",
                                     e.l1, e.model, l1_length, rng);
    canon_iter["fixed_point"] = vec_to_json(*e.iter.fixed_point);
  }

  const bool optimizer_kind = kind == "halpern_gd" || kind == "rsgd";
  if (!optimizer_kind) {
    if (kind != "km" && kind != "halpern" && kind != "viscosity" && kind != "picard") {
      throw ConfigError("iteration.kind", "unknown iteration kind: " + kind);
    }
    json canon_op;
    e.op = parse_operator(require(config, "", "operator"), "operator", e.l1, e.model,
                          l1_length, rng, canon_op);
    canon["operator"] = canon_op;
  }

  if (kind == "halpern") {
    e.iter.anchor = parse_point(require(iteration, "iteration", "u"), "iteration.u",
                                e.l1, e.model, l1_length, rng);
    canon_iter["u"] = vec_to_json(*e.iter.anchor);
    const std::string conv =
        iteration.value("convention", std::string("anchor_weight_lambda"));
    try {
      e.iter.convention = halpern_convention_from_string(conv);
    } catch (const std::invalid_argument& err) {
      throw ConfigError("iteration.convention", err.what());
    }
    canon_iter["convention"] = conv;
  }

  if (kind == "viscosity") {
    json canon_f;
    if (!iteration.contains("f")) throw ConfigError("iteration.f", "missing field");
    e.contraction = parse_operator(iteration.at("f"), "iteration.f", e.l1, e.model,
                                   l1_length, rng, canon_f);
    canon_iter["f"] = canon_f;
    e.iter.contraction = e.contraction.get();
  }

  if (optimizer_kind) {
    if (e.l1) throw ConfigError("space", "optimizer kinds need a model space");
    if (e.model->kappa > 0.0) throw ConfigError("space.kappa", "optimizer kinds need kappa <= 0");
    e.objective = parse_objective(require(iteration, "iteration", "objective"),
                                  "iteration.objective", *e.model, rng);
    canon_iter["objective"] = objective_to_json(*e.objective);
    if (kind == "halpern_gd") {
      ResolventSpec spec{*e.objective, number_or(iteration, "lambda", 1.0),
                         ResolventInner::Numeric, {}};
      const std::string inner = iteration.value("resolvent", std::string("numeric"));
      if (inner == "closed_form") {
        spec.inner = ResolventInner::ClosedForm;
      } else if (inner != "numeric") {
        throw ConfigError("iteration.resolvent", "expected numeric or closed_form");
      }
      if (!(spec.lambda > 0.0)) throw ConfigError("iteration.lambda", "must be > 0");
      canon_iter["lambda"] = spec.lambda;
      canon_iter["resolvent"] = inner;
      e.resolvent_spec = std::move(spec);
      if (iteration.contains("u")) {
        e.iter.anchor = parse_point(iteration.at("u"), "iteration.u", false, e.model,
                                    0, rng);
      } else {
        e.iter.anchor = e.iter.x0;  // anchored at the start by default
      }
      canon_iter["u"] = vec_to_json(*e.iter.anchor);
    } else {
      e.rsgd_step = number_or(iteration, "step", 0.5);
      if (!(e.rsgd_step > 0.0)) throw ConfigError("iteration.step", "must be > 0");
      canon_iter["step"] = e.rsgd_step;
    }
  }

  canon["iteration"] = canon_iter;

  if (config.contains("checks")) {
    if (!config.at("checks").is_array()) throw ConfigError("checks", "expected an array");
    for (const auto& c : config.at("checks")) {
      if (!c.is_object() || !c.contains("name")) {
        throw ConfigError("checks", "each check needs a name");
      }
      e.checks.push_back(c);
    }
  }
  canon["checks"] = e.checks;

  e.output = config.value("output", std::string("out"));
  canon["output"] = e.output.string();

  e.canonical = std::move(canon);
  return e;
}

namespace {

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << j.dump(2) << '\n';
}

}  // namespace

RunResult run_experiment(Experiment& e, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  Trace trace;
  std::optional<OptRun> opt_run;
  if (e.kind == "km") {
    trace = km_run(*e.metric, *e.op, e.iter);
  } else if (e.kind == "halpern") {
    trace = halpern_run(*e.metric, *e.op, e.iter);
  } else if (e.kind == "viscosity") {
    trace = viscosity_run(*e.metric, *e.op, e.iter);
  } else if (e.kind == "picard") {
    trace = picard_run(*e.metric, *e.op, e.iter);
  } else if (e.kind == "halpern_gd") {
    HalpernGDConfig cfg;
    cfg.u = *e.iter.anchor;
    cfg.x0 = e.iter.x0;
    cfg.alphas = e.iter.schedule;
    cfg.horizon = e.iter.horizon;
    cfg.store_points = e.iter.store_points;
    if (e.iter.fixed_point) cfg.oracle = e.iter.fixed_point;
    opt_run = hyperbolic_halpern_gd(*e.resolvent_spec, cfg);
    trace = opt_run->trace;
  } else if (e.kind == "rsgd") {
    RsgdConfig cfg;
    cfg.x0 = e.iter.x0;
    cfg.step = e.rsgd_step;
    cfg.horizon = e.iter.horizon;
    cfg.store_points = e.iter.store_points;
    if (e.iter.fixed_point) cfg.oracle = e.iter.fixed_point;
    opt_run = rsgd_run(*e.objective, cfg);
    trace = opt_run->trace;
  }

  trace.meta["config"] = e.canonical;
  trace.meta["seed"] = e.seed;
  trace.write_csv(out_dir / "trace.csv");
  write_json(trace.meta, out_dir / "trace.meta.json");
  if (opt_run) {
    opt_run->write_csv(out_dir / "optrun.csv");
    write_json(opt_run->summary(), out_dir / "optrun.json");
  }

  RunResult result;
  json check_reports = json::object();
  for (const auto& c : e.checks) {
    const std::string name = c.at("name").get<std::string>();
    if (name == "km_bound") {
      const double diam = c.value("diam", 1.0);
      BoundReport rep = km_bound_report(trace, e.iter.schedule, diam);
      std::ofstream f(out_dir / (name + ".csv"));
      rep.write_csv(f);
      check_reports[name] = rep.summary();
      result.violated |= rep.violated;
    } else if (name == "cmn" || name == "pn") {
      const double diam = c.value("diam", 1.0);
      const int N = c.value("N", 50);
      CTable table(e.iter.schedule, N);
      BoundReport rep = name == "cmn"
                            ? pairwise_cmn_report(*e.metric, trace, table, diam)
                            : residual_pn_report(trace, table, diam);
      std::ofstream f(out_dir / (name + ".csv"));
      rep.write_csv(f);
      check_reports[name] = rep.summary();
      result.violated |= rep.violated;
    } else if (name == "probabilistic") {
      const int N = c.value("N", 50);
      BoundReport rep = probabilistic_report(e.iter.schedule, N);
      std::ofstream f(out_dir / (name + ".csv"));
      rep.write_csv(f);
      check_reports[name] = rep.summary();
      result.violated |= rep.violated;
    } else if (name == "viscosity") {
      if (e.kind != "viscosity" || !e.iter.fixed_point) {
        throw ConfigError("checks", "viscosity check needs a viscosity run with fixed_point");
      }
      const double beta = e.iter.schedule.kind() == Schedule::Kind::Viscosity
                              ? e.iter.schedule.param()
                              : c.value("beta", 0.5);
      ViscosityConstants consts = visc_constants(*e.metric, e.iter.x0,
                                                 *e.iter.fixed_point, *e.contraction, beta);
      ViscosityBoundReport rep = visc_bound_report(trace, consts);
      std::ofstream fs(out_dir / "viscosity_step.csv");
      rep.step.write_csv(fs);
      std::ofstream fr(out_dir / "viscosity_residual.csv");
      rep.residual.write_csv(fr);
      check_reports["viscosity_step"] = rep.step.summary();
      check_reports["viscosity_residual"] = rep.residual.summary();
      result.violated |= rep.violated();
    } else {
      throw ConfigError("checks", "unknown check: " + name);
    }
  }

  result.report = {{"violated", result.violated}, {"checks", check_reports}};
  result.report_path = out_dir / "report.json";
  write_json(result.report, result.report_path);
  return result;
}

json bench_frechet(const json& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const uint64_t seed = config.value("seed", 0);
  Rng rng(seed);

  const json& space_j = require(config, "", "space");
  ModelSpace space;
  space.kappa = require_number(space_j, "space", "kappa");
  space.dim = static_cast<int>(require_number(space_j, "space", "dim"));
  if (space.kappa > 0.0) throw ConfigError("space.kappa", "bench needs kappa <= 0");

  // Anchors: explicit list or {"sample": {"count": m, "radius": r}}.
  std::vector<Vec> anchors;
  const json& obj_j = require(config, "", "objective");
  if (obj_j.contains("sample")) {
    const int count = static_cast<int>(number_or(obj_j.at("sample"), "count", 5));
    const double radius = number_or(obj_j.at("sample"), "radius", 0.8);
    for (int i = 0; i < count; ++i) {
      anchors.push_back(sample_in_ball(space, space.base_point(), radius, rng));
    }
  } else {
    for (const auto& a : require(obj_j, "objective", "anchors")) {
      anchors.push_back(vec_from_json(a, "objective.anchors"));
    }
  }
  std::vector<double> weights(anchors.size(), 1.0 / anchors.size());
  Objective objective = Objective::frechet(space, anchors, weights);

  const double lambda = config.value("lambda", 1.0);
  const int horizon = config.value("horizon", 10000);
  const int warm_steps = config.value("warm_start_steps", 8);
  const double rsgd_step = config.value("rsgd_step", 0.5);
  const double target = config.value("target", 1e-6);

  const Vec oracle = frechet_oracle(objective, 1e-12);

  // Short full-gradient warm phase; its endpoint anchors the Halpern run.
  RsgdConfig warm;
  warm.x0 = space.base_point();
  warm.step = rsgd_step;
  warm.horizon = warm_steps;
  const Vec x0 = rsgd_run(objective, warm).final;

  ResolventSpec spec{objective, lambda, ResolventInner::Numeric, {}};
  HalpernGDConfig hg;
  hg.u = x0;
  hg.x0 = x0;
  hg.alphas = Schedule::harmonic();
  hg.horizon = horizon;
  hg.oracle = oracle;
  hg.conv_tol = target;
  OptRun halpern = hyperbolic_halpern_gd(spec, hg);
  halpern.write_csv(out_dir / "halpern_gd.csv");

  RsgdConfig base;
  base.x0 = x0;
  base.step = rsgd_step;
  base.horizon = horizon;
  base.oracle = oracle;
  OptRun rsgd = rsgd_run(objective, base);
  rsgd.write_csv(out_dir / "rsgd.csv");

  const double final_dist = space.dist(halpern.final, oracle);
  double max_k_res = 0.0;
  for (const auto& row : halpern.trace.rows) {
    max_k_res = std::max(max_k_res, row.n * row.residual);
  }

  json summary = {{"oracle", point_json(space, oracle)},
                  {"warm_start", point_json(space, x0)},
                  {"halpern_gd",
                   {{"final", point_json(space, halpern.final)},
                    {"dist_to_oracle", final_dist},
                    {"max_k_residual", max_k_res},
                    {"target", target},
                    {"converged", final_dist <= target}}},
                  {"rsgd",
                   {{"final", point_json(space, rsgd.final)},
                    {"dist_to_oracle", space.dist(rsgd.final, oracle)}}},
                  {"seed", seed}};
  write_json(summary, out_dir / "bench.json");
  return summary;
}

}  // namespace cat0
