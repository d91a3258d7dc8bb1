#pragma once

#include <string>
#include <vector>

#include "cat0/optimizer.hpp"
#include "cat0/rates.hpp"

namespace cat0 {

/// One verified invariant: pass/fail plus the worst observed slack
/// (negative slack beyond the check's tolerance means violation).
struct SuiteCheck {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  std::string note;
};

bool all_pass(const std::vector<SuiteCheck>& checks);

struct GeometryParams {
  uint64_t seed = 101;
  int samples = 1000;  // per space and invariant
};

struct OperatorParams {
  uint64_t seed = 202;
  int trials = 1000;
};

struct KmRatesParams {
  uint64_t seed = 303;
  int horizon = 1000;
  int rotations = 7;     // operator draws per space
  int contractions = 6;  // together with 4 schedules and 2 spaces: >= 100 runs
};

struct CRecursionParams {
  uint64_t seed = 404;
  int N = 50;
};

struct SharpnessParams {
  int shift_horizon = 500;
  int rotation_max_n = 200;
};

struct ViscosityParams {
  uint64_t seed = 505;
  int horizon = 10000;
  int centers_per_beta = 3;
};

struct OptimizerParams {
  uint64_t seed = 606;
  int resolvent_pairs = 100;   // per lambda
  int lipschitz_pairs = 1000;
};

struct BenchmarkParams {
  uint64_t seed = 707;
  int anchor_count = 5;
  double anchor_radius = 0.8;
  double lambda = 1.0;
  int horizon = 10000;
  int warm_steps = 8;
  double target = 1e-6;
};

std::vector<SuiteCheck> suite_geometry(const GeometryParams& p = {});
std::vector<SuiteCheck> suite_operators(const OperatorParams& p = {});
std::vector<SuiteCheck> suite_km_rates(const KmRatesParams& p = {});
std::vector<SuiteCheck> suite_c_recursion(const CRecursionParams& p = {});
std::vector<SuiteCheck> suite_sharpness(const SharpnessParams& p = {});
std::vector<SuiteCheck> suite_viscosity(const ViscosityParams& p = {});
std::vector<SuiteCheck> suite_optimizer(const OptimizerParams& p = {});
std::vector<SuiteCheck> suite_benchmark(const BenchmarkParams& p = {});

/// name in {geometry, operators, km_rates, c_recursion, sharpness, viscosity,
/// optimizer, all}; throws std::invalid_argument otherwise. The optimizer
/// suite includes the Fréchet benchmark.
std::vector<SuiteCheck> run_suite(const std::string& name);

}  // namespace cat0
