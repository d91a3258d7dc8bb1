#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cat0/config.hpp"

using namespace cat0;
using nlohmann::json;

namespace {

json km_rotation_config() {
  return json{{"space", {{"kappa", 0.0}, {"dim", 2}}},
              {"operator", {{"kind", "planar_rotation"}, {"angle", 0.9}}},
              {"iteration",
               {{"kind", "km"},
                {"horizon", 50},
                {"x0", {0.4, 0.3}},
                {"schedule", {{"kind", "constant"}, {"value", 0.5}}}}},
              {"checks", {{{"name", "km_bound"}, {"diam", 2.0}}}},
              {"output", "out/test"},
              {"seed", 7}};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config round trip is a fixed point") {
  const json original = km_rotation_config();
  Experiment e1 = parse_experiment(original);
  Experiment e2 = parse_experiment(e1.canonical);
  CHECK(e1.canonical == e2.canonical);
}

TEST_CASE("sampled placeholders resolve deterministically") {
  json cfg = km_rotation_config();
  cfg["space"] = {{"kappa", -1.0}, {"dim", 2}};
  cfg["operator"] = {{"kind", "elliptic_rotation"}, {"angle", 0.7}};
  cfg["iteration"]["x0"] = {{"sample_radius", 0.5}};
  Experiment a = parse_experiment(cfg);
  Experiment b = parse_experiment(cfg);
  CHECK(a.canonical == b.canonical);
  CHECK(a.canonical["iteration"]["x0"].is_array());
}

TEST_CASE("config errors carry field paths") {
  json cfg = km_rotation_config();
  cfg["iteration"].erase("x0");
  try {
    parse_experiment(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(err.path() == "iteration.x0");
  }

  cfg = km_rotation_config();
  cfg["operator"]["kind"] = "no_such_operator";
  try {
    parse_experiment(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(err.path() == "operator.kind");
  }

  cfg = km_rotation_config();
  cfg["iteration"]["kind"] = "halpern";  // missing anchor u
  CHECK_THROWS_AS(parse_experiment(cfg), ConfigError);
}

TEST_CASE("identical runs produce byte-identical traces") {
  const auto dir1 = std::filesystem::temp_directory_path() / "cat0_test_run1";
  const auto dir2 = std::filesystem::temp_directory_path() / "cat0_test_run2";
  json cfg = km_rotation_config();
  Experiment e1 = parse_experiment(cfg);
  Experiment e2 = parse_experiment(cfg);
  run_experiment(e1, dir1);
  run_experiment(e2, dir2);
  const std::string t1 = slurp(dir1 / "trace.csv");
  const std::string t2 = slurp(dir2 / "trace.csv");
  CHECK(!t1.empty());
  CHECK(t1 == t2);
  // horizon + 1 rows plus the header
  CHECK(std::count(t1.begin(), t1.end(), '\n') == 52);
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("bound checks drive the exit status") {
  SUBCASE("nonexpansive instance passes") {
    json cfg = km_rotation_config();
    Experiment e = parse_experiment(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "cat0_test_ok";
    const RunResult res = run_experiment(e, dir);
    CHECK_FALSE(res.violated);
    CHECK(std::filesystem::exists(dir / "km_bound.csv"));
    CHECK(std::filesystem::exists(dir / "report.json"));
    std::filesystem::remove_all(dir);
  }

  SUBCASE("an expansive mock violates the bound") {
    json cfg = km_rotation_config();
    cfg["operator"] = {{"kind", "geodesic_scaling"},
                       {"center", {0.0, 0.0}},
                       {"factor", 1.5}};
    Experiment e = parse_experiment(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "cat0_test_bad";
    const RunResult res = run_experiment(e, dir);
    CHECK(res.violated);
    CHECK(res.report["checks"]["km_bound"]["violated"].get<bool>());
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("l1 shift experiment from config") {
  json cfg = {{"space", {{"l1", true}}},
              {"operator", {{"kind", "right_shift"}}},
              {"iteration",
               {{"kind", "km"},
                {"horizon", 40},
                {"x0", {1.0}},
                {"schedule", {{"kind", "constant"}, {"value", 0.5}}}}},
              {"seed", 1}};
  Experiment e = parse_experiment(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "cat0_test_l1";
  const RunResult res = run_experiment(e, dir);
  CHECK_FALSE(res.violated);
  std::filesystem::remove_all(dir);
}

TEST_CASE("forward operator from config") {
  json cfg = {{"space", {{"kappa", 0.0}, {"dim", 3}}},
              {"operator",
               {{"kind", "forward"},
                {"beta", 1.0},
                {"lipschitz", 1.0},
                {"objective", {{"kind", "half_sq_dist"}, {"anchor", {0.0, 0.0, 0.0}}}}}},
              {"iteration",
               {{"kind", "km"},
                {"horizon", 30},
                {"x0", {0.8, -0.1, 0.2}},
                {"schedule", {{"kind", "constant"}, {"value", 0.5}}},
                {"fixed_point", {0.0, 0.0, 0.0}}}},
              {"checks", {{{"name", "km_bound"}, {"diam", 2.0}}}},
              {"seed", 3}};
  Experiment e = parse_experiment(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "cat0_test_forward";
  const RunResult res = run_experiment(e, dir);
  CHECK_FALSE(res.violated);
  std::filesystem::remove_all(dir);

  cfg["operator"]["beta"] = 3.0;  // outside (0, 2/L)
  CHECK_THROWS_AS(parse_experiment(cfg), ConfigError);
}

TEST_CASE("point json serialization") {
  const ModelSpace hyp = ModelSpace::hyperbolic(2);
  const json j = point_json(hyp, hyp.base_point());
  CHECK(j["space"]["kappa"] == -1.0);
  CHECK(j["space"]["dim"] == 2);
  CHECK(j["coords"].size() == 3);
  CHECK(j["coords"][0].get<double>() == 1.0);
}
