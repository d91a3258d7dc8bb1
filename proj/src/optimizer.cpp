#include "cat0/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cat0 {

Objective Objective::half_sq_dist(ModelSpace space, Vec anchor) {
  Objective obj(Kind::HalfSqDist, space);
  obj.anchors_.push_back(std::move(anchor));
  obj.weights_.push_back(1.0);
  return obj;
}

Objective Objective::frechet(ModelSpace space, std::vector<Vec> anchors,
                             std::vector<double> weights) {
  if (anchors.empty() || anchors.size() != weights.size()) {
    throw std::invalid_argument("frechet: anchors/weights size mismatch");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("frechet: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("frechet: weights must sum to 1");
  }
  Objective obj(Kind::Frechet, space);
  obj.anchors_ = std::move(anchors);
  obj.weights_ = std::move(weights);
  return obj;
}

Objective Objective::custom(ModelSpace space,
                            std::function<double(const Vec&)> value,
                            std::function<Vec(const Vec&)> gradient) {
  Objective obj(Kind::Custom, space);
  obj.value_ = std::move(value);
  obj.gradient_ = std::move(gradient);
  return obj;
}

double Objective::value(const Vec& y) const {
  if (kind_ == Kind::Custom) return value_(y);
  double v = 0.0;
  for (size_t i = 0; i < anchors_.size(); ++i) {
    const double d = space_.dist(y, anchors_[i]);
    v += 0.5 * weights_[i] * d * d;
  }
  return v;
}

Vec Objective::gradient(const Vec& y) const {
  if (kind_ == Kind::Custom) return gradient_(y);
  Vec g = Vec::Zero(space_.ambient_dim());
  for (size_t i = 0; i < anchors_.size(); ++i) {
    g -= weights_[i] * space_.log_map(y, anchors_[i]);
  }
  return g;
}

namespace {

void require_hadamard(const ModelSpace& space, const char* what) {
  if (space.kappa > 0.0) {
    throw std::domain_error(std::string(what) + ": kappa > 0 is unsupported");
  }
}

struct GdResult {
  Vec point;
  double grad_norm = 0.0;
  int iters = 0;
  bool converged = false;
};

// Geodesic gradient descent with halving backtracking. Near the minimizer
// the value differences fall below double resolution long before the
// gradient norm does, so steps whose value change is inside the rounding
// noise are accepted on gradient-norm contraction instead.
GdResult geodesic_gd(const ModelSpace& space,
                     const std::function<double(const Vec&)>& value,
                     const std::function<Vec(const Vec&)>& gradient, Vec y,
                     double base_step, double tol, int max_iter) {
  GdResult out;
  double fy = value(y);
  for (int it = 0; it < max_iter; ++it) {
    const Vec g = gradient(y);
    const double gn = space.tangent_norm(g);
    if (gn <= tol) {
      out.point = std::move(y);
      out.grad_norm = gn;
      out.iters = it;
      out.converged = true;
      return out;
    }
    const double noise = 1e-14 * (1.0 + std::abs(fy));
    double step = base_step;
    bool moved = false;
    for (int h = 0; h < 80; ++h) {
      Vec cand = space.exp_map(y, -step * g);
      const double fc = value(cand);
      if (fc < fy ||
          (fc <= fy + noise && space.tangent_norm(gradient(cand)) < gn)) {
        y = std::move(cand);
        fy = std::min(fc, fy);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      out.point = std::move(y);
      out.grad_norm = gn;
      out.iters = it;
      out.converged = false;
      return out;
    }
  }
  out.grad_norm = space.tangent_norm(gradient(y));
  out.converged = out.grad_norm <= tol;
  out.point = std::move(y);
  out.iters = max_iter;
  return out;
}

void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

Vec resolvent_closed_form(const ModelSpace& space, const Vec& x, const Vec& anchor,
                          double lambda) {
  require_hadamard(space, "resolvent_closed_form");
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("resolvent_closed_form: lambda must be > 0");
  }
  return space.combine(x, anchor, lambda / (1.0 + lambda));
}

Vec resolvent_numeric(const ResolventSpec& spec, const Vec& x) {
  const ModelSpace& space = spec.objective.space();
  require_hadamard(space, "resolvent_numeric");
  if (!(spec.lambda > 0.0)) {
    throw std::invalid_argument("resolvent_numeric: lambda must be > 0");
  }
  const double lambda = spec.lambda;
  auto moreau_value = [&](const Vec& y) {
    const double d = space.dist(x, y);
    return spec.objective.value(y) + d * d / (2.0 * lambda);
  };
  auto moreau_grad = [&](const Vec& y) -> Vec {
    return spec.objective.gradient(y) - space.log_map(y, x) / lambda;
  };
  // The Moreau term makes the objective at least (1/lambda)-strongly convex;
  // 1/(1 + 1/lambda) is the matching step, backtracking covers the rest.
  const double base_step = lambda / (1.0 + lambda);
  GdResult res = geodesic_gd(space, moreau_value, moreau_grad, x, base_step,
                             spec.options.tol, spec.options.max_iter);
  if (!res.converged) {
    std::ostringstream os;
    os << "resolvent_numeric: no convergence after " << res.iters
       << " iterations, gradient norm " << res.grad_norm;
    throw std::runtime_error(os.str());
  }
  return res.point;
}

Vec resolvent(const ResolventSpec& spec, const Vec& x) {
  if (spec.inner == ResolventInner::ClosedForm) {
    if (spec.objective.kind() != Objective::Kind::HalfSqDist) {
      throw std::invalid_argument(
          "resolvent: closed form is only available for half_sq_dist");
    }
    return resolvent_closed_form(spec.objective.space(), x,
                                 spec.objective.anchors()[0], spec.lambda);
  }
  return resolvent_numeric(spec, x);
}

void OptRun::write_csv(std::ostream& os) const {
  std::string out = "k,residual,objective,dist_to_oracle\n";
  for (size_t k = 0; k < trace.rows.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    append_g17(out, trace.rows[k].residual);
    out += ',';
    append_g17(out, objective_values[k]);
    out += ',';
    append_g17(out, trace.rows[k].dist_to_fix);
    out += '\n';
  }
  os << out;
}

void OptRun::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  write_csv(f);
}

nlohmann::json OptRun::summary() const {
  std::vector<double> coords(final.data(), final.data() + final.size());
  return {{"final_point", coords},
          {"steps", trace.rows.empty() ? 0 : trace.rows.back().n},
          {"converged", converged},
          {"final_residual", trace.rows.empty() ? 0.0 : trace.rows.back().residual},
          {"final_objective", objective_values.empty() ? 0.0 : objective_values.back()}};
}

OptRun hyperbolic_halpern_gd(const ResolventSpec& spec, const HalpernGDConfig& cfg) {
  const ModelSpace& space = spec.objective.space();
  require_hadamard(space, "hyperbolic_halpern_gd");
  if (!cfg.alphas.open_unit_range(cfg.horizon)) {
    throw std::invalid_argument("hyperbolic_halpern_gd: alpha_k must lie in (0,1)");
  }
  OptRun run;
  run.trace.rows.reserve(cfg.horizon + 1);
  run.objective_values.reserve(cfg.horizon + 1);
  Vec x = cfg.x0;
  Vec prev;
  for (int k = 0; k <= cfg.horizon; ++k) {
    const Vec jx = resolvent(spec, x);
    TraceRow row;
    row.n = k;
    row.residual = space.dist(x, jx);
    row.step_dist = k == 0 ? 0.0 : space.dist(x, prev);
    if (cfg.oracle) row.dist_to_fix = space.dist(x, *cfg.oracle);
    row.lambda = k == 0 ? 0.0 : cfg.alphas.at(k);
    run.trace.rows.push_back(row);
    run.objective_values.push_back(spec.objective.value(x));
    if (cfg.store_points) run.trace.points.push_back(x);
    if (k == cfg.horizon) break;
    prev = x;
    x = space.combine(cfg.u, jx, 1.0 - cfg.alphas.at(k + 1));
  }
  run.final = x;
  run.converged = run.trace.rows.back().residual <= cfg.conv_tol;
  run.trace.meta = {{"kind", "halpern_gd"},
                    {"horizon", cfg.horizon},
                    {"schedule", cfg.alphas.describe()},
                    {"lambda", spec.lambda},
                    {"space", space.describe()}};
  return run;
}

OptRun rsgd_run(const Objective& objective, const RsgdConfig& cfg) {
  const ModelSpace& space = objective.space();
  require_hadamard(space, "rsgd_run");
  if (!cfg.step_schedule && !(cfg.step > 0.0)) {
    throw std::invalid_argument("rsgd_run: step must be > 0");
  }
  OptRun run;
  run.trace.rows.reserve(cfg.horizon + 1);
  run.objective_values.reserve(cfg.horizon + 1);
  Vec x = cfg.x0;
  Vec prev;
  for (int k = 0; k <= cfg.horizon; ++k) {
    const Vec g = objective.gradient(x);
    TraceRow row;
    row.n = k;
    row.residual = space.tangent_norm(g);  // stationarity residual
    row.step_dist = k == 0 ? 0.0 : space.dist(x, prev);
    if (cfg.oracle) row.dist_to_fix = space.dist(x, *cfg.oracle);
    const double step_k =
        cfg.step_schedule ? cfg.step_schedule->at(std::max(k, 1)) : cfg.step;
    row.lambda = k == 0 ? 0.0 : step_k;
    run.trace.rows.push_back(row);
    run.objective_values.push_back(objective.value(x));
    if (cfg.store_points) run.trace.points.push_back(x);
    if (k == cfg.horizon) break;
    prev = x;
    const double step =
        cfg.step_schedule ? cfg.step_schedule->at(k + 1) : cfg.step;
    x = space.exp_map(x, -step * g);
  }
  run.final = x;
  run.converged = run.trace.rows.back().residual <= cfg.conv_tol;
  run.trace.meta = {{"kind", "rsgd"},
                    {"horizon", cfg.horizon},
                    {"step", cfg.step_schedule ? -1.0 : cfg.step},
                    {"space", space.describe()}};
  return run;
}

Vec frechet_oracle(const Objective& objective, double tol) {
  if (objective.kind() != Objective::Kind::Frechet &&
      objective.kind() != Objective::Kind::HalfSqDist) {
    throw std::invalid_argument("frechet_oracle: frechet objectives only");
  }
  const ModelSpace& space = objective.space();
  require_hadamard(space, "frechet_oracle");
  const auto& anchors = objective.anchors();
  if (anchors.size() == 1) return anchors[0];

  // Start from the anchor with the smallest objective value, then descend.
  Vec y = anchors[0];
  double best = objective.value(y);
  for (const Vec& a : anchors) {
    const double v = objective.value(a);
    if (v < best) {
      best = v;
      y = a;
    }
  }
  auto value = [&](const Vec& p) { return objective.value(p); };
  auto grad = [&](const Vec& p) { return objective.gradient(p); };
  GdResult res = geodesic_gd(space, value, grad, std::move(y), 0.5, tol, 200000);
  if (!res.converged) {
    std::ostringstream os;
    os << "frechet_oracle: no convergence, gradient norm " << res.grad_norm;
    throw std::runtime_error(os.str());
  }
  return res.point;
}

}  // namespace cat0
