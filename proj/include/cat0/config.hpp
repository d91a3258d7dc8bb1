#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cat0/optimizer.hpp"
#include "cat0/rates.hpp"

namespace cat0 {

/// Configuration problem with the offending field path attached.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// {"space": {"kappa","dim"}, "coords": [...]}.
nlohmann::json point_json(const ModelSpace& space, const Vec& coords);

/// A parsed, fully resolved experiment. Sampled placeholders ("base",
/// {"sample_radius": r}) are resolved at parse time from the experiment seed,
/// so the canonical config is literal and the run is reproducible.
struct Experiment {
  nlohmann::json canonical;  // resolved config; parse(canonical) is a fixed point

  std::string kind;  // km | halpern | viscosity | picard | halpern_gd | rsgd
  bool l1 = false;
  std::optional<ModelSpace> model;   // set unless l1
  std::unique_ptr<Metric> metric;
  std::unique_ptr<Operator> op;            // iteration target (absent for optimizer kinds)
  std::unique_ptr<Operator> contraction;   // viscosity f
  IterationConfig iter;

  std::optional<ResolventSpec> resolvent_spec;  // halpern_gd
  std::optional<Objective> objective;           // halpern_gd / rsgd
  double rsgd_step = 0.5;

  std::vector<nlohmann::json> checks;
  std::filesystem::path output;
  uint64_t seed = 0;
};

/// Throws ConfigError with a dotted field path on any invalid field.
Experiment parse_experiment(const nlohmann::json& config);

struct RunResult {
  bool violated = false;
  nlohmann::json report;
  std::filesystem::path report_path;
};

/// Executes the experiment and writes trace.csv, trace.meta.json,
/// report.json and one CSV per requested check into `out_dir`.
RunResult run_experiment(Experiment& e, const std::filesystem::path& out_dir);

/// Fréchet-mean benchmark: oracle, warm start, anchored resolvent iteration,
/// and an RSGD baseline on the same instance. Writes halpern_gd.csv,
/// rsgd.csv and bench.json; returns the summary.
nlohmann::json bench_frechet(const nlohmann::json& config,
                             const std::filesystem::path& out_dir);

}  // namespace cat0
