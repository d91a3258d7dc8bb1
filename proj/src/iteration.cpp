#include "cat0/iteration.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace cat0 {

std::string to_string(HalpernConvention c) {
  return c == HalpernConvention::AnchorWeightLambda
             ? "anchor_weight_lambda"
             : "anchor_weight_one_minus_lambda";
}

HalpernConvention halpern_convention_from_string(const std::string& s) {
  if (s == "anchor_weight_lambda") return HalpernConvention::AnchorWeightLambda;
  if (s == "anchor_weight_one_minus_lambda") {
    return HalpernConvention::AnchorWeightOneMinusLambda;
  }
  throw std::invalid_argument("unknown halpern convention: " + s);
}

namespace {

void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

// One loop for all drivers: next_point(x_n, T x_n, k) with k = n+1 the
// 1-origin schedule index. Residuals reuse the same operator evaluation that
// drives the update, so a trace costs horizon + 1 applications of T.
Trace drive(const Metric& metric, const Operator& T, const IterationConfig& cfg,
            const char* kind,
            const std::function<Vec(const Vec&, const Vec&, int)>& next_point) {
  if (cfg.horizon < 0) throw std::invalid_argument("iteration: negative horizon");
  Trace trace;
  trace.rows.reserve(cfg.horizon + 1);
  if (cfg.store_points) trace.points.reserve(cfg.horizon + 1);

  Vec x = cfg.x0;
  Vec prev;
  for (int n = 0; n <= cfg.horizon; ++n) {
    const Vec tx = T.apply(x);
    TraceRow row;
    row.n = n;
    row.residual = metric.dist(x, tx);
    row.step_dist = n == 0 ? 0.0 : metric.dist(x, prev);
    if (cfg.fixed_point) row.dist_to_fix = metric.dist(x, *cfg.fixed_point);
    row.lambda = n == 0 ? 0.0 : cfg.schedule.at(n);
    trace.rows.push_back(row);
    if (cfg.store_points) trace.points.push_back(x);
    if (n == cfg.horizon) break;
    prev = x;
    x = next_point(x, tx, n + 1);
  }

  trace.meta = {{"kind", kind},
                {"horizon", cfg.horizon},
                {"schedule", cfg.schedule.describe()},
                {"operator", T.describe()},
                {"store_points", cfg.store_points}};
  return trace;
}

}  // namespace

Trace km_run(const Metric& metric, const Operator& T, const IterationConfig& cfg) {
  if (!cfg.schedule.open_unit_range(cfg.horizon)) {
    throw std::invalid_argument("km_run: schedule values must lie in (0,1)");
  }
  return drive(metric, T, cfg, "km", [&](const Vec& x, const Vec& tx, int k) {
    return metric.combine(x, tx, cfg.schedule.at(k));
  });
}

Trace halpern_run(const Metric& metric, const Operator& T,
                  const IterationConfig& cfg) {
  if (!cfg.anchor) throw std::invalid_argument("halpern_run: anchor u missing");
  const Vec& u = *cfg.anchor;
  Trace trace = drive(
      metric, T, cfg, "halpern", [&](const Vec&, const Vec& tx, int k) {
        const double lambda = cfg.schedule.at(k);
        // anchor weight lambda: u carries lambda, so combine weight on T is 1-lambda
        const double w_on_t =
            cfg.convention == HalpernConvention::AnchorWeightLambda ? 1.0 - lambda
                                                                    : lambda;
        return metric.combine(u, tx, w_on_t);
      });
  trace.meta["convention"] = to_string(cfg.convention);
  return trace;
}

Trace viscosity_run(const Metric& metric, const Operator& T,
                    const IterationConfig& cfg) {
  if (cfg.contraction == nullptr) {
    throw std::invalid_argument("viscosity_run: contraction f missing");
  }
  const Operator& f = *cfg.contraction;
  Trace trace =
      drive(metric, T, cfg, "viscosity", [&](const Vec& x, const Vec& tx, int k) {
        const double alpha = cfg.schedule.at(k);
        return metric.combine(f.apply(x), tx, 1.0 - alpha);
      });
  trace.meta["contraction"] = f.describe();
  return trace;
}

Trace picard_run(const Metric& metric, const Operator& T,
                 const IterationConfig& cfg) {
  Trace trace = drive(metric, T, cfg, "picard",
                      [&](const Vec&, const Vec& tx, int) { return tx; });
  for (auto& row : trace.rows) {
    if (row.n > 0) row.lambda = 1.0;  // picard is the full step
  }
  return trace;
}

void Trace::write_csv(std::ostream& os) const {
  std::string out = "n,residual,step_dist,dist_to_fix,lambda\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    append_g17(out, row.residual);
    out += ',';
    append_g17(out, row.step_dist);
    out += ',';
    append_g17(out, row.dist_to_fix);
    out += ',';
    append_g17(out, row.lambda);
    out += '\n';
  }
  os << out;
}

void Trace::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  write_csv(f);
}

}  // namespace cat0
