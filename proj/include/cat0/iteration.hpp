#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "cat0/metric.hpp"
#include "cat0/operators.hpp"
#include "cat0/schedule.hpp"

namespace cat0 {

enum class HalpernConvention {
  AnchorWeightLambda,          // z_{n+1} = lambda u (+) (1-lambda) T z_n
  AnchorWeightOneMinusLambda,  // z_{n+1} = (1-lambda) u (+) lambda T z_n
};

std::string to_string(HalpernConvention c);
HalpernConvention halpern_convention_from_string(const std::string& s);

struct TraceRow {
  int n = 0;
  double residual = 0.0;   // d(x_n, T x_n)
  double step_dist = 0.0;  // d(x_n, x_{n-1}); 0 at n = 0
  double dist_to_fix = std::numeric_limits<double>::quiet_NaN();
  double lambda = 0.0;     // schedule value used to produce x_n; 0 at n = 0
};

struct Trace {
  std::vector<TraceRow> rows;   // size horizon + 1
  std::vector<Vec> points;      // iterates, only when requested
  nlohmann::json meta;

  /// CSV with header n,residual,step_dist,dist_to_fix,lambda at 17
  /// significant digits. Unknown dist_to_fix prints as nan.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::filesystem::path& path) const;
};

struct IterationConfig {
  Vec x0;
  int horizon = 100;
  Schedule schedule = Schedule::constant(0.5);
  std::optional<Vec> anchor;               // u, required by halpern_run
  const Operator* contraction = nullptr;   // f, required by viscosity_run
  HalpernConvention convention = HalpernConvention::AnchorWeightLambda;
  std::optional<Vec> fixed_point;          // fills the dist_to_fix column
  bool store_points = false;
};

/// x_{n+1} = (1-lambda_{n+1}) x_n (+) lambda_{n+1} T x_n.
/// Requires schedule values in (0,1) over the horizon.
Trace km_run(const Metric& metric, const Operator& T, const IterationConfig& cfg);

/// Anchored iteration; the weight placement is selected by cfg.convention
/// (the sharpness suite pins which one reproduces the 2/(n+1) equality).
Trace halpern_run(const Metric& metric, const Operator& T, const IterationConfig& cfg);

/// x_{k+1} = alpha_{k+1} f(x_k) (+) (1-alpha_{k+1}) T x_k.
Trace viscosity_run(const Metric& metric, const Operator& T, const IterationConfig& cfg);

/// x_{n+1} = T x_n.
Trace picard_run(const Metric& metric, const Operator& T, const IterationConfig& cfg);

}  // namespace cat0
