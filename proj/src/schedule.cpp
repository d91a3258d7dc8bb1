#include "cat0/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cat0 {

Schedule Schedule::constant(double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::invalid_argument("schedule: constant value must be in (0,1]");
  }
  return Schedule(Kind::Constant, value, {});
}

Schedule Schedule::harmonic() { return Schedule(Kind::Harmonic, 0.0, {}); }

Schedule Schedule::power(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("schedule: power exponent must be in (0,1)");
  }
  return Schedule(Kind::Power, theta, {});
}

Schedule Schedule::km_ratio() { return Schedule(Kind::KmRatio, 0.0, {}); }

Schedule Schedule::viscosity(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("schedule: viscosity beta must be in [0,1)");
  }
  return Schedule(Kind::Viscosity, beta, {});
}

Schedule Schedule::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("schedule: empty table");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("schedule: table values must be in [0,1]");
    }
  }
  return Schedule(Kind::Table, 0.0, std::move(values));
}

double Schedule::at(int k) const {
  if (k < 1) throw std::out_of_range("schedule: index must be >= 1");
  switch (kind_) {
    case Kind::Constant:
      return param_;
    case Kind::Harmonic:
      return 1.0 / (k + 1.0);
    case Kind::Power:
      return std::pow(static_cast<double>(k), -param_);
    case Kind::KmRatio:
      return static_cast<double>(k) / (k + 1.0);
    case Kind::Viscosity:
      return std::min(2.0 / ((1.0 - param_) * k), 1.0);
    case Kind::Table:
      if (k > static_cast<int>(values_.size())) {
        throw std::out_of_range("schedule: table exhausted");
      }
      return values_[k - 1];
  }
  throw std::logic_error("schedule: unknown kind");
}

bool Schedule::open_unit_range(int horizon) const {
  for (int k = 1; k <= horizon; ++k) {
    const double v = at(k);
    if (!(v > 0.0 && v < 1.0)) return false;
  }
  return true;
}

std::string Schedule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << param_ << ")";
      break;
    case Kind::Harmonic:
      os << "harmonic";
      break;
    case Kind::Power:
      os << "power(" << param_ << ")";
      break;
    case Kind::KmRatio:
      os << "km_ratio";
      break;
    case Kind::Viscosity:
      os << "viscosity(beta=" << param_ << ")";
      break;
    case Kind::Table:
      os << "table[" << values_.size() << "]";
      break;
  }
  return os.str();
}

ScheduleDiagnostics diagnose(const Schedule& schedule, int horizon) {
  if (horizon < 10) throw std::invalid_argument("diagnose: horizon must be >= 10");
  ScheduleDiagnostics d;
  d.horizon = horizon;
  const int tail_start = horizon / 2;
  double prev = schedule.at(1);
  d.sum = prev;
  d.sum_lambda_one_minus = prev * (1.0 - prev);
  for (int k = 2; k <= horizon; ++k) {
    const double cur = schedule.at(k);
    d.sum += cur;
    d.sum_lambda_one_minus += cur * (1.0 - cur);
    d.sum_abs_diff += std::abs(cur - prev);
    if (k - 1 >= tail_start && cur > 0.0) {
      d.max_tail_rel_diff =
          std::max(d.max_tail_rel_diff, std::abs(cur - prev) / cur);
    }
    prev = cur;
  }
  d.last_value = prev;
  return d;
}

}  // namespace cat0
