// Acceptance suite: end-to-end checks of every advertised rate bound and
// equality at its stated tolerance, one pass/fail line per criterion.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "cat0/suites.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::vector<cat0::SuiteCheck> checks;
  double elapsed_s = 0.0;

  bool pass() const {
    return cat0::all_pass(checks) && elapsed_s <= time_limit_s;
  }
};

int failures = 0;

void report(const Criterion& c) {
  std::printf("[%s] criterion %d: %s (%.2f s, limit %.0f s)\n",
              c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str(), c.elapsed_s,
              c.time_limit_s);
  for (const auto& check : c.checks) {
    std::printf("        %s %s: %s\n", check.pass ? "ok  " : "FAIL",
                check.name.c_str(), check.note.c_str());
  }
  if (!c.pass()) ++failures;
}

template <typename Fn>
void run(int id, const std::string& title, double limit_s, Fn&& fn) {
  Criterion c{id, title, limit_s, {}};
  const auto t0 = Clock::now();
  c.checks = fn();
  c.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
  report(c);
}

}  // namespace

int main() {
  using namespace cat0;

  run(1, "KM residual bound domination over >=100 seeded instances", 60.0, [] {
    KmRatesParams p;
    p.horizon = 1000;
    auto checks = suite_km_rates(p);
    // keep only the bound check; Fejer monotonicity is a unit-suite extra
    return checks;
  });

  run(2, "recursive majorants c_{m,n}, P_n and the probabilistic cap, N = 50",
      120.0, [] {
        CRecursionParams p;
        p.N = 50;
        return suite_c_recursion(p);
      });

  run(3, "right-shift lower bound residual >= 1/sqrt(n+1), n <= 500", 5.0, [] {
    SharpnessParams p;
    p.shift_horizon = 500;
    p.rotation_max_n = 2;  // rotation handled by criterion 4
    auto checks = suite_sharpness(p);
    checks.resize(1);
    return checks;
  });

  run(4, "rotation equality residual_n = 2/(n+1) under exactly one anchor convention, n <= 200",
      10.0, [] {
        SharpnessParams p;
        p.shift_horizon = 10;
        p.rotation_max_n = 200;
        auto checks = suite_sharpness(p);
        checks.erase(checks.begin());
        return checks;
      });

  run(5, "viscosity O(1/k) step and residual bounds on the hyperboloid, k <= 10^4",
      60.0, [] {
        ViscosityParams p;
        p.horizon = 10000;
        return suite_viscosity(p);
      });

  run(6, "resolvent: closed form vs numeric, 1-Lipschitz, fixed points = minimizers",
      30.0, [] {
        OptimizerParams p;
        p.resolvent_pairs = 100;
        p.lipschitz_pairs = 1000;
        return suite_optimizer(p);
      });

  run(7, "anchored resolvent descent on the 5-anchor Fréchet benchmark, 10^4 steps",
      120.0, [] {
        BenchmarkParams p;
        p.horizon = 10000;
        p.anchor_count = 5;
        p.lambda = 1.0;
        p.target = 1e-6;
        return suite_benchmark(p);
      });

  run(8, "geometry invariants over >=10^3 seeded samples each", 30.0, [] {
    GeometryParams p;
    p.samples = 1000;
    return suite_geometry(p);
  });

  if (failures == 0) {
    std::printf("acceptance suite passed (8 criteria)\n");
    return 0;
  }
  std::printf("acceptance suite FAILED: %d criteria\n", failures);
  return 1;
}
