#pragma once

#include <string>
#include <vector>

namespace cat0 {

/// Step-coefficient sequence lambda_k (or alpha_k), 1-origin: at(1) is the
/// value used by the first update. All kinds emit values in (0,1].
class Schedule {
 public:
  enum class Kind { Constant, Harmonic, Power, KmRatio, Viscosity, Table };

  static Schedule constant(double value);
  static Schedule harmonic();            // 1/(k+1)
  static Schedule power(double theta);   // k^-theta, theta in (0,1)
  static Schedule km_ratio();            // k/(k+1)
  static Schedule viscosity(double beta);  // min{2/((1-beta)k), 1}
  static Schedule table(std::vector<double> values);

  /// k >= 1; Table schedules throw std::out_of_range past their end.
  double at(int k) const;

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  const std::vector<double>& values() const { return values_; }

  /// True iff every value up to `horizon` lies strictly inside (0,1).
  bool open_unit_range(int horizon) const;

  std::string describe() const;

 private:
  Schedule(Kind kind, double param, std::vector<double> values)
      : kind_(kind), param_(param), values_(std::move(values)) {}
  Kind kind_;
  double param_;
  std::vector<double> values_;
};

/// Finite-horizon indicators for the classical step-size conditions. These
/// are diagnostics over the first `horizon` values, not proofs about tails.
struct ScheduleDiagnostics {
  int horizon = 0;
  double last_value = 0.0;              // C1 proxy: lambda_horizon
  double sum = 0.0;                     // C2 proxy: sum lambda_k
  double sum_lambda_one_minus = 0.0;    // KM divergence proxy: sum lambda(1-lambda)
  double sum_abs_diff = 0.0;            // C4 proxy: sum |lambda_{k+1}-lambda_k|
  double max_tail_rel_diff = 0.0;       // C5 proxy: max_{k >= horizon/2} |diff|/lambda_{k+1}
};

/// Requires horizon >= 10.
ScheduleDiagnostics diagnose(const Schedule& schedule, int horizon);

}  // namespace cat0
