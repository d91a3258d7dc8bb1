#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cat0/config.hpp"
#include "cat0/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cat0::ConfigError("config", "cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error& err) {
    throw cat0::ConfigError("config", std::string("parse error: ") + err.what());
  }
  return j;
}

std::filesystem::path resolve_out(const std::string& flag_value,
                                  const std::filesystem::path& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CAT0_OUT_DIR")) return env;
  return config_value;
}

int cmd_run(const std::string& config_path, const std::string& out_flag,
            std::optional<uint64_t> seed, std::optional<int> horizon) {
  nlohmann::json config = load_json(config_path);
  if (seed) config["seed"] = *seed;
  if (horizon) config["iteration"]["horizon"] = *horizon;
  cat0::Experiment experiment = cat0::parse_experiment(config);
  const auto out_dir = resolve_out(out_flag, experiment.output);
  const cat0::RunResult result = cat0::run_experiment(experiment, out_dir);
  std::cout << (result.violated ? "VIOLATED" : "ok") << "  report: "
            << result.report_path.string() << "\n";
  return result.violated ? kExitViolation : kExitOk;
}

int cmd_verify(const std::string& suite) {
  const auto checks = cat0::run_suite(suite);
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.note << "\n";
  }
  const bool ok = cat0::all_pass(checks);
  std::cout << (ok ? "suite passed" : "suite FAILED") << " (" << checks.size()
            << " checks)\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_bench(const std::string& config_path, const std::string& out_flag) {
  nlohmann::json config = load_json(config_path);
  const auto out_dir =
      resolve_out(out_flag, config.value("output", std::string("out/bench")));
  const nlohmann::json summary = cat0::bench_frechet(config, out_dir);
  std::cout << summary.dump(2) << "\n";
  return summary.at("halpern_gd").at("converged").get<bool>() ? kExitOk
                                                              : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point iterations and rate certificates on CAT(0) model spaces"};
  app.require_subcommand(1);

  std::string config_path, out_flag, suite_name;
  std::optional<uint64_t> seed;
  std::optional<int> horizon;

  auto* run = app.add_subcommand("run", "run an experiment config and its bound checks");
  run->add_option("config", config_path, "experiment JSON file")->required();
  run->add_option("--out", out_flag, "output directory (overrides config and CAT0_OUT_DIR)");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--horizon", horizon, "override the iteration horizon");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify
      ->add_option("suite", suite_name,
                   "geometry|operators|km_rates|c_recursion|sharpness|viscosity|"
                   "optimizer|all")
      ->required();

  auto* bench = app.add_subcommand("bench", "benchmarks");
  std::string bench_config, bench_out;
  auto* frechet = bench->add_subcommand("frechet", "Fréchet-mean benchmark");
  frechet->add_option("config", bench_config, "benchmark JSON file")->required();
  frechet->add_option("--out", bench_out, "output directory");
  bench->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_flag, seed, horizon);
    if (verify->parsed()) return cmd_verify(suite_name);
    if (bench->parsed()) return cmd_bench(bench_config, bench_out);
  } catch (const cat0::ConfigError& err) {
    std::cerr << "config error at " << err.path() << ": " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
