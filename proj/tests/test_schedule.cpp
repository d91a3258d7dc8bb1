#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cat0/schedule.hpp"

using namespace cat0;

TEST_CASE("schedule values") {
  CHECK(Schedule::constant(0.5).at(123) == 0.5);
  CHECK(Schedule::harmonic().at(1) == doctest::Approx(0.5));
  CHECK(Schedule::harmonic().at(9) == doctest::Approx(0.1));
  CHECK(Schedule::power(0.5).at(1) == doctest::Approx(1.0));
  CHECK(Schedule::power(0.5).at(4) == doctest::Approx(0.5));
  CHECK(Schedule::km_ratio().at(1) == doctest::Approx(0.5));
  CHECK(Schedule::km_ratio().at(99) == doctest::Approx(0.99));

  // alpha_1 = min{2/(1-beta), 1} = 1 for every beta in [0,1)
  CHECK(Schedule::viscosity(0.5).at(1) == doctest::Approx(1.0));
  CHECK(Schedule::viscosity(0.5).at(8) == doctest::Approx(0.5));
  CHECK(Schedule::viscosity(0.25).at(100) == doctest::Approx(2.0 / 75.0));

  const Schedule table = Schedule::table({0.1, 0.2, 0.3});
  CHECK(table.at(2) == 0.2);
  CHECK_THROWS_AS(table.at(4), std::out_of_range);
  CHECK_THROWS_AS(table.at(0), std::out_of_range);

  CHECK_THROWS_AS(Schedule::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::constant(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::power(1.0), std::invalid_argument);
}

TEST_CASE("open unit range") {
  CHECK(Schedule::constant(0.5).open_unit_range(100));
  CHECK(Schedule::harmonic().open_unit_range(100));
  CHECK_FALSE(Schedule::power(0.5).open_unit_range(100));  // first value is 1
  CHECK_FALSE(Schedule::viscosity(0.5).open_unit_range(100));
}

TEST_CASE("diagnostics") {
  SUBCASE("constant one half") {
    const auto d = diagnose(Schedule::constant(0.5), 1000);
    CHECK(d.last_value == doctest::Approx(0.5));  // C1 proxy flags failure
    CHECK(d.sum == doctest::Approx(500.0));
    CHECK(d.sum_lambda_one_minus == doctest::Approx(250.0));
    CHECK(d.sum_abs_diff == doctest::Approx(0.0));
    CHECK(d.max_tail_rel_diff == doctest::Approx(0.0));
  }

  SUBCASE("harmonic") {
    const int horizon = 10000;
    const auto d = diagnose(Schedule::harmonic(), horizon);
    double expected_sum = 0.0;
    for (int k = 1; k <= horizon; ++k) expected_sum += 1.0 / (k + 1.0);
    CHECK(d.sum == doctest::Approx(expected_sum).epsilon(1e-12));
    // loosely ln(horizon) + Euler-Mascheroni
    CHECK(d.sum > std::log(static_cast<double>(horizon)) - 1.5);
    CHECK(d.sum < std::log(static_cast<double>(horizon)) + 1.0);
    CHECK(d.sum_abs_diff < 1.0);  // telescoping partial sum (C4 proxy)
    CHECK(d.last_value == doctest::Approx(1.0 / (horizon + 1.0)));
  }

  SUBCASE("km_ratio flags C1 failure") {
    const auto d = diagnose(Schedule::km_ratio(), 1000);
    CHECK(d.last_value > 0.99);
  }

  CHECK_THROWS_AS(diagnose(Schedule::harmonic(), 5), std::invalid_argument);
}
